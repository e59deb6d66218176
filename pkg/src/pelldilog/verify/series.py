"""Certified truncated summation of Rogers-dilogarithm series.

Every series here has arguments x_2 > x_3 > ... in (0, 1) with
x_{k+1} <= r x_k.  For x in (0, 1/2] one has L(x) <= x (pi^2/6 + |log x|),
and the right side is increasing in x, so the omitted tail after x_next is at
most sum_j x_next r^j (pi^2/6 + |log x_next| + j |log r|).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional, Union

from ..dilog import rogers
from ..errors import DomainError, ExhaustionError
from ..numerics import PrecisionContext, Real, pi


@dataclass(frozen=True)
class Term:
    """One series argument; ``arg_error`` bounds its distance from the exact argument."""

    argument: Union[Fraction, Real]
    arg_error: Union[Real, int] = 0
    label: str = ""


TailFn = Callable[[Real, int, PrecisionContext], Real]


@dataclass(frozen=True)
class TermSequence:
    description: str
    generate: Callable[[], Iterator[Term]]
    ratio_bound: Optional[Real] = None
    tail: Optional[TailFn] = None
    notes: tuple = field(default=(), compare=False)

    def tail_at(self, x_next: Real, index: int, ctx: PrecisionContext) -> Real:
        if self.tail is not None:
            return self.tail(x_next, index, ctx)
        return tail_bound(x_next, self.ratio_bound, ctx)


@dataclass(frozen=True)
class SeriesSum:
    partial_sum: Real
    terms_used: int
    tail_bound: Real
    rounding_budget: Real


def tail_bound(x_next: Real | Fraction | int, ratio_bound: Real | Fraction, ctx: PrecisionContext) -> Real:
    """Upper bound on sum_{j>=0} L(x_j) when x_0 <= x_next <= 1/2 and x_{j+1} <= ratio_bound x_j.

    Closed form of sum_j x r^j (pi^2/6 + |log x| + j |log r|), rounded outward.
    """
    mp = ctx.mp
    x = ctx.real(x_next) if isinstance(x_next, Fraction) else mp.mpf(x_next)
    r = ctx.real(ratio_bound) if isinstance(ratio_bound, Fraction) else mp.mpf(ratio_bound)
    if x < 0:
        raise DomainError("x_next must be non-negative")
    if x > 0.5:
        raise DomainError("x_next must be <= 1/2; extend the partial sum first")
    if not 0 < r < 1:
        raise DomainError("ratio_bound must lie in (0, 1)")
    if x == 0:
        return mp.zero
    one_minus = 1 - r
    head = x * (pi(ctx) ** 2 / 6 + abs(mp.log(x))) / one_minus
    drift = x * abs(mp.log(r)) * r / (one_minus * one_minus)
    return ctx.outward(head + drift, 16)


def lewin_integral_tail(k_next: int, ctx: PrecisionContext) -> Real:
    """Bound on sum_{k>=k_next} L(1/k^2) by the integral of t^-2 (pi^2/6 + 2 log t) from k_next - 1."""
    if k_next < 2:
        raise DomainError("k_next must be >= 2")
    mp = ctx.mp
    K = k_next - 1
    return ctx.outward((pi(ctx) ** 2 / 6 + 2 * mp.log(K) + 2) / K, 8)


def certified_sum(seq: TermSequence, ctx: PrecisionContext, tolerance: Real, max_terms: int) -> SeriesSum:
    """Sum L over ``seq`` in order until the tail bound is at most tolerance/4."""
    mp = ctx.mp
    quarter = mp.mpf(tolerance) / 4
    total = mp.zero
    budget = mp.zero
    used = 0
    tail = None
    for index, term in enumerate(seq.generate()):
        x = ctx.real(term.argument) if isinstance(term.argument, Fraction) else mp.mpf(term.argument)
        x_hi = ctx.outward(x + mp.mpf(term.arg_error), 2)
        if x_hi <= 0.5:
            tb = seq.tail_at(x_hi, index, ctx)
            if tb <= quarter:
                tail = tb
                break
        if used >= max_terms:
            raise ExhaustionError(
                f"{seq.description}: tail bound not below {mp.nstr(quarter, 5)} within {max_terms} terms"
            )
        d = rogers(term.argument, ctx, term.arg_error)
        total += d.value
        budget += d.abs_error_bound
        used += 1
    if tail is None:
        raise ExhaustionError(f"{seq.description}: sequence ended before the tail bound was met")
    budget += used * ctx.unit * max(abs(total), 1)
    return SeriesSum(total, used, tail, ctx.outward(budget, 2 * used + 2))
