"""Exact Pell-equation solutions a^2 - n b^2 = +-1 over Z and Q, and their powers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Iterator, Optional

from .contfrac import expand_surd, iter_convergents
from .errors import DomainError
from .numerics import PrecisionContext, QuadraticSurd, Real, is_square


@dataclass(frozen=True)
class PellSolution:
    """The unit u = a + b sqrt(n) with a, b > 0 and a^2 - n b^2 = sign."""

    a: Fraction
    b: Fraction
    n: int
    sign: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.n < 2 or is_square(self.n):
            raise DomainError(f"n must be a non-square >= 2, got {self.n}")
        if self.a <= 0 or self.b <= 0:
            raise DomainError("a and b must be positive")
        if classify(self.a, self.b, self.n) != self.sign:
            raise DomainError(f"({self.a}, {self.b}) does not solve a^2 - {self.n} b^2 = {self.sign}")

    @property
    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def surd(self) -> QuadraticSurd:
        return QuadraticSurd.from_parts(self.a, self.b, self.n)

    def unit(self, ctx: PrecisionContext) -> Real:
        return self.surd().value(ctx)

    def inverse_square(self, ctx: PrecisionContext) -> Real:
        """1/u^2, computed without cancellation."""
        u = self.unit(ctx)
        return 1 / (u * u)

    def __str__(self) -> str:
        kind = "positive" if self.sign == 1 else "negative"
        return f"{self.a} + {self.b}√{self.n} ({kind})"


@dataclass(frozen=True)
class UnitPower:
    """u^k = a_k + b_k sqrt(n)."""

    k: int
    a_k: Fraction
    b_k: Fraction


def classify(a: Fraction | int, b: Fraction | int, n: int) -> Optional[int]:
    """+1 or -1 when a^2 - n b^2 is that value exactly, otherwise None."""
    a, b = Fraction(a), Fraction(b)
    norm = a * a - n * b * b
    if norm == 1:
        return 1
    if norm == -1:
        return -1
    return None


def fundamental_solution(n: int, allow_negative: bool = True) -> PellSolution:
    """Fundamental unit of Z[sqrt(n)] from the continued fraction of sqrt(n).

    The convergent closing the first period solves a^2 - n b^2 = (-1)^r for
    period length r.  When only positive solutions are wanted and that
    convergent is negative, it is squared.
    """
    n = int(n)
    if n < 2 or is_square(n):
        raise DomainError(f"n must be a non-square >= 2, got {n}")
    cf = expand_surd(QuadraticSurd(0, n, 1))
    r = len(cf.period)
    last = next(islice(iter_convergents(cf), r - 1, None))
    a, b = last.h, last.k
    sign = 1 if r % 2 == 0 else -1
    if sign == -1 and not allow_negative:
        a, b, sign = a * a + n * b * b, 2 * a * b, 1
    return PellSolution(Fraction(a), Fraction(b), n, sign)


def unit_powers(sol: PellSolution) -> Iterator[UnitPower]:
    """u, u^2, u^3, ... via a_{k+1} = a a_k + n b b_k and b_{k+1} = a b_k + b a_k."""
    a, b, n = sol.a, sol.b, sol.n
    ak, bk = a, b
    k = 1
    while True:
        yield UnitPower(k, ak, bk)
        ak, bk = a * ak + n * b * bk, a * bk + b * ak
        k += 1


def unit_power(sol: PellSolution, k: int) -> UnitPower:
    if k < 1:
        raise DomainError("k must be >= 1")
    return next(islice(unit_powers(sol), k - 1, None))


GOLDEN = PellSolution(Fraction(1, 2), Fraction(1, 2), 5, -1)


def fibonacci_pair(k: int) -> tuple[int, int]:
    """(g_k, f_k) with phi^k = (g_k + f_k sqrt(5))/2: g = 1, 3, 4, 7, 11, ... and f = 1, 1, 2, 3, 5, ..."""
    p = unit_power(GOLDEN, k)
    g, f = 2 * p.a_k, 2 * p.b_k
    assert g.denominator == 1 and f.denominator == 1
    return int(g), int(f)
