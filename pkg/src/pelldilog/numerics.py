"""Exact and arbitrary-precision arithmetic substrate.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`, both
exact.  Real numbers are :mod:`mpmath` ``mpf`` values owned by a dedicated
``MPContext`` per working precision, so that no evaluation depends on the
global ``mpmath.mp`` state.
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

from .errors import DomainError

Real = mpmath.mpf
Number = Union[int, Fraction, "mpmath.mpf"]

DEFAULT_GUARD_BITS = 32


_local = threading.local()


def _mp_context(bits: int) -> mpmath.MPContext:
    # mpmath raises ctx.prec temporarily inside some functions, so contexts are per thread
    cache = _local.__dict__.setdefault("contexts", {})
    mp = cache.get(bits)
    if mp is None:
        mp = cache[bits] = mpmath.MPContext()
        mp.prec = bits
    return mp


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision for one evaluation.

    ``precision_bits`` is the requested target; all arithmetic runs at
    ``precision_bits + guard_bits``.
    """

    precision_bits: int = 256
    guard_bits: int = DEFAULT_GUARD_BITS

    def __post_init__(self) -> None:
        if self.precision_bits < 64:
            raise DomainError(f"precision_bits must be >= 64, got {self.precision_bits}")
        if self.guard_bits < 0:
            raise DomainError(f"guard_bits must be >= 0, got {self.guard_bits}")

    @property
    def working_bits(self) -> int:
        return self.precision_bits + self.guard_bits

    @property
    def mp(self) -> mpmath.MPContext:
        return _mp_context(self.working_bits)

    @property
    def unit(self) -> Real:
        """2**-working_bits, the absolute rounding unit for values of size <= 1."""
        return self.mp.ldexp(1, -self.working_bits)

    def real(self, x: Number | str) -> Real:
        """Round ``x`` to the working precision."""
        if isinstance(x, Fraction):
            return self.mp.mpf(x.numerator) / x.denominator
        return self.mp.mpf(x)

    def outward(self, x: Real, ops: int = 1) -> Real:
        """Inflate a non-negative value computed with ``ops`` roundings so it bounds the exact value."""
        return self.mp.mpf(x) * (1 + (ops + 1) * self.unit)

    def to_decimal(self, x: Real) -> str:
        """Round-trip decimal string for ``x`` at the target precision."""
        digits = math.ceil(self.precision_bits * math.log10(2)) + 1
        return self.mp.nstr(self.mp.mpf(x), digits)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


@dataclass(frozen=True)
class QuadraticSurd:
    """The real number (P + sqrt(D)) / Q with D a positive non-square.

    Construction rescales so that Q divides D - P**2, which the continued
    fraction iteration requires.
    """

    P: int
    D: int
    Q: int

    def __post_init__(self) -> None:
        P, D, Q = int(self.P), int(self.D), int(self.Q)
        if D <= 0 or is_square(D):
            raise DomainError(f"D must be a positive non-square, got {D}")
        if Q == 0:
            raise DomainError("Q must be nonzero")
        if (D - P * P) % Q:
            aq = abs(Q)
            P, D, Q = P * aq, D * Q * Q, Q * aq
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "Q", Q)

    @classmethod
    def from_parts(cls, a: Fraction | int, b: Fraction | int, n: int) -> "QuadraticSurd":
        """The surd a + b*sqrt(n) for rationals a, b with b != 0."""
        a, b = Fraction(a), Fraction(b)
        if b == 0:
            raise DomainError("b must be nonzero for a quadratic surd")
        den = a.denominator * b.denominator
        p = a.numerator * b.denominator
        r = abs(b.numerator) * a.denominator
        if b > 0:
            return cls(p, r * r * n, den)
        return cls(-p, r * r * n, -den)

    def square(self) -> "QuadraticSurd":
        """The surd for self**2; requires P != 0 (otherwise the square is rational)."""
        if self.P == 0:
            raise DomainError("square of sqrt(D)/Q is rational, not a surd")
        num = self.P * self.P + self.D
        den = self.Q * self.Q
        root_sq = 4 * self.P * self.P * self.D
        if self.P > 0:
            return QuadraticSurd(num, root_sq, den)
        return QuadraticSurd(-num, root_sq, -den)

    def value(self, ctx: PrecisionContext) -> Real:
        return surd_value(self, ctx)

    def __str__(self) -> str:
        return f"({self.P} + sqrt({self.D}))/{self.Q}"


def surd_value(s: QuadraticSurd, ctx: PrecisionContext) -> Real:
    """(P + sqrt(D))/Q at the working precision, within 2 ulp.

    A negative P is handled through the conjugate form (D - P^2)/(Q (sqrt(D) - P))
    so the numerator never cancels.
    """
    mp = ctx.mp
    root = mp.sqrt(s.D)
    if s.P >= 0:
        return (root + s.P) / s.Q
    return mp.mpf(s.D - s.P * s.P) / ((root - s.P) * s.Q)


def pi(ctx: PrecisionContext) -> Real:
    return +ctx.mp.pi


_SURD_RE = re.compile(
    r"^\s*\(?\s*(?P<p>[+-]?\d+)\s*(?P<op>[+-])\s*(?P<q>\d+)\s*\*\s*sqrt\(\s*(?P<d>\d+)\s*\)\s*\)?"
    r"\s*(?:/\s*(?P<r>[+-]?\d+))?\s*$"
)


def parse_surd(text: str) -> QuadraticSurd:
    """Parse "(p + q*sqrt(d))/r"; the parentheses and "/r" are optional."""
    m = _SURD_RE.match(text)
    if not m:
        raise DomainError(f"cannot parse surd {text!r}; expected '(p + q*sqrt(d))/r'")
    p, q, d = int(m["p"]), int(m["q"]), int(m["d"])
    r = int(m["r"] or 1)
    if r == 0 or q == 0:
        raise DomainError("q and r must be nonzero")
    if m["op"] == "-":
        p, r = -p, -r
    return QuadraticSurd(p, q * q * d, r)
