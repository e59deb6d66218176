"""Chebyshev polynomials T_n and U_n by their three-term recurrence."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Iterator, Union

import mpmath

from .errors import DomainError
from .numerics import PrecisionContext, Real

Point = Union[int, Fraction, "mpmath.mpf"]


def iter_chebyshev(kind: str, x: Point) -> Iterator[Point]:
    """P_0(x), P_1(x), ... for kind "T" or "U".

    Exact for int/Fraction points; an mpf point computes in its own context.
    """
    if kind not in ("T", "U"):
        raise DomainError(f"kind must be 'T' or 'U', got {kind!r}")
    if isinstance(x, int):
        x = Fraction(x)
    prev = x * 0 + 1
    cur = x if kind == "T" else 2 * x
    yield prev
    while True:
        yield cur
        prev, cur = cur, 2 * x * cur - prev


def cheb_eval(kind: str, n: int, x: Point) -> Point:
    if n < 0:
        raise DomainError("degree must be >= 0")
    return next(islice(iter_chebyshev(kind, x), n, None))


@dataclass(frozen=True)
class HyperbolicCheck:
    t_residual: Real
    u_residual: Real
    bound: Real


def cheb_hyperbolic_check(x: Point, k: int, ctx: PrecisionContext) -> HyperbolicCheck:
    """Compare T_k(x) with cosh(kL/2) and U_{k-1}(x) with sinh(kL/2)/sinh(L/2).

    Here x = cosh(L/2) > 1, so L = 2 log(x + sqrt(x^2 - 1)).
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    mp = ctx.mp
    xr = ctx.real(x) if isinstance(x, (int, Fraction)) else mp.mpf(x)
    if xr <= 1:
        raise DomainError("x must exceed 1")
    s = mp.sqrt((xr - 1) * (xr + 1))
    half = mp.log(xr + s)
    t = cheb_eval("T", k, xr)
    uk = cheb_eval("U", k - 1, xr)
    t_res = abs(t - mp.cosh(k * half))
    u_res = abs(uk - mp.sinh(k * half) / s)
    scale = max(abs(t), abs(uk), 1)
    bound = ctx.outward(8 * (k + 2) * (1 + k * half) * ctx.unit * scale)
    return HyperbolicCheck(t_res, u_res, bound)
