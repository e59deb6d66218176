"""Cross-ratios and orthogeodesic terms for ideal polygons and the annulus cover.

Boundary points on the real line are numbers or :data:`INFINITY`.  Polygon
vertices live on the unit circle and are given by angle; their cross-ratios
are computed from chord lengths, so everything stays real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import mpmath

from .errors import DomainError
from .numerics import PrecisionContext, Real


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()

BoundaryPoint = Union[int, Fraction, "mpmath.mpf", _Infinity]


def cross_ratio(z1: BoundaryPoint, z2: BoundaryPoint, z3: BoundaryPoint, z4: BoundaryPoint,
                ctx: PrecisionContext) -> Real:
    """[z1, z2, z3, z4] = (z1 - z2)(z4 - z3) / ((z1 - z3)(z4 - z2)).

    A point at infinity cancels the two factors that contain it.
    """
    pts = (z1, z2, z3, z4)
    if sum(p is INFINITY for p in pts) > 1:
        raise DomainError("at most one point may be at infinity")
    finite = [p for p in pts if p is not INFINITY]
    exact = all(isinstance(p, (int, Fraction)) for p in finite)
    vals = [Fraction(p) if exact else p for p in finite]
    if len(set(vals)) != len(vals):
        raise DomainError("cross-ratio needs four distinct points")
    conv = (lambda v: v) if exact else (lambda v: ctx.real(v) if isinstance(v, (int, Fraction)) else ctx.mp.mpf(v))
    a, b, c, d = (None if p is INFINITY else conv(Fraction(p) if exact else p) for p in pts)

    if a is None:
        r = (d - c) / (d - b)
    elif b is None:
        r = (d - c) / (a - c)
    elif c is None:
        r = (a - b) / (d - b)
    elif d is None:
        r = (a - b) / (a - c)
    else:
        r = (a - b) * (d - c) / ((a - c) * (d - b))
    return ctx.real(r) if exact else r


@dataclass(frozen=True)
class OrthoTerm:
    """The value 1/cosh^2(l/2) of an orthogeodesic of length l, with its source."""

    value: Real
    source: tuple
    rel_error: Real = field(default=0, compare=False)


@dataclass(frozen=True)
class IdealPolygon:
    """Ideal polygon with vertices on the unit circle at strictly increasing angles in [0, 2 pi)."""

    angles: tuple

    def __post_init__(self) -> None:
        n = len(self.angles)
        if n < 4:
            raise DomainError("an ideal polygon here needs at least 4 vertices")
        if any(b <= a for a, b in zip(self.angles, self.angles[1:])):
            raise DomainError("vertices must be strictly counterclockwise")
        if self.angles[0] < 0 or self.angles[-1] - self.angles[0] >= 2 * mpmath.pi:
            raise DomainError("vertex angles must span less than a full turn")

    @classmethod
    def regular(cls, n: int, ctx: PrecisionContext) -> "IdealPolygon":
        mp = ctx.mp
        return cls(tuple(2 * mp.pi * m / n for m in range(n)))

    @property
    def n(self) -> int:
        return len(self.angles)

    @property
    def cusp_count(self) -> int:
        return self.n

    @property
    def euler_characteristic(self) -> Fraction:
        return 1 - Fraction(self.n, 2)

    def orthogeodesic_pairs(self) -> list[tuple[int, int]]:
        """Side pairs (i, j), side i joining vertices i and i+1, that are not adjacent."""
        n = self.n
        return [(i, j) for i in range(n) for j in range(i + 2, n) if not (i == 0 and j == n - 1)]


def _chord(a: Real, b: Real, ctx: PrecisionContext) -> Real:
    return 2 * abs(ctx.mp.sin((b - a) / 2))


def polygon_orthospectrum(poly: IdealPolygon, ctx: PrecisionContext) -> list[OrthoTerm]:
    """One term [x_i, x_{i+1}, x_j, x_{j+1}] per non-adjacent side pair, from chord lengths."""
    mp = ctx.mp
    th = [mp.mpf(t) for t in poly.angles]
    n = poly.n
    out = []
    # each chord is two roundings of sin plus the angle difference; 4 chords and 3 ops per term
    rel = 40 * ctx.unit
    for i, j in poly.orthogeodesic_pairs():
        i1, j1 = (i + 1) % n, (j + 1) % n
        num = _chord(th[i], th[i1], ctx) * _chord(th[j1], th[j], ctx)
        den = _chord(th[i], th[j], ctx) * _chord(th[j1], th[i1], ctx)
        if den == 0:
            raise DomainError("degenerate polygon")
        out.append(OrthoTerm(num / den, (i, j), rel))
    return out


def regular_ngon_terms(n: int, ctx: PrecisionContext) -> list[tuple[Real, Real]]:
    """Per-vertex weighted arguments for the regular ideal n-gon.

    Weight-1 arguments sin^2(pi/n)/sin^2(k pi/n) for k = 2 .. ceil(n/2) - 1, and
    for even n the opposite-side argument sin^2(pi/n) with weight 1/2.
    """
    if n < 4:
        raise DomainError("n must be >= 4")
    mp = ctx.mp
    s1 = mp.sin(mp.pi / n) ** 2
    out = [(mp.one, s1 / mp.sin(k * mp.pi / n) ** 2) for k in range(2, math.ceil(n / 2))]
    if n % 2 == 0:
        out.append((mp.mpf(0.5), s1))
    return out


def annulus_boundary_term(L: Real, ctx: PrecisionContext) -> OrthoTerm:
    """The orthogeodesic meeting the closed geodesic: [inf, 0, 1, e^L] = 1 - e^-L."""
    lam = ctx.mp.exp(L)
    return OrthoTerm(cross_ratio(INFINITY, 0, 1, lam, ctx), ("boundary",), 8 * ctx.unit)


def annulus_cross_ratio_term(L: Real, k: int, ctx: PrecisionContext) -> tuple[Real, Real]:
    """[1, lam, lam^k, lam^(k+1)] with lam = e^L, and a relative error bound for it."""
    mp = ctx.mp
    lam = mp.exp(L)
    lk = lam ** k
    lk1 = lk * lam
    value = cross_ratio(1, lam, lk, lk1, ctx)
    # each difference amplifies the operand rounding by max/|difference|
    amp = (lam / (lam - 1)) * 2 + lk1 / (lk1 - lk) + lk / (lk - 1) + lk1 / (lk1 - lam)
    rel = ctx.outward((4 * k + 8 + 2 * amp + 2 * k * L) * ctx.unit)
    return value, rel


def annulus_terms(L: Real, K: int, ctx: PrecisionContext) -> list[OrthoTerm]:
    """Terms sinh^2(L/2)/sinh^2(kL/2) for k = 2..K, each checked against its cross-ratio form."""
    mp = ctx.mp
    L = mp.mpf(L)
    if L <= 0:
        raise DomainError("L must be positive")
    if K < 2:
        raise DomainError("K must be >= 2")
    s1 = mp.sinh(L / 2)
    out = []
    for k in range(2, K + 1):
        v = (s1 / mp.sinh(k * L / 2)) ** 2
        rel_sinh = (8 + 2 * k * L) * ctx.unit
        cr, rel_cr = annulus_cross_ratio_term(L, k, ctx)
        if abs(v - cr) > (rel_sinh + rel_cr) * v:
            raise AssertionError(f"annulus term k={k}: sinh form {v} vs cross-ratio {cr}")
        out.append(OrthoTerm(v, ("annulus", k), ctx.outward(rel_sinh)))
    return out
