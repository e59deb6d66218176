"""Continued fractions of quadratic surds and rationals, and their convergents."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, cycle, islice
from typing import Iterator

from .errors import ConvergenceError, DomainError
from .numerics import QuadraticSurd


@dataclass(frozen=True)
class CFExpansion:
    """[head; period repeating].  An empty period means a terminating (rational) expansion."""

    head: tuple[int, ...]
    period: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "head", tuple(int(c) for c in self.head))
        object.__setattr__(self, "period", tuple(int(c) for c in self.period))
        tail = list(self.head[1:]) + list(self.period if self.head else self.period[1:])
        if any(c < 1 for c in tail):
            raise DomainError(f"partial quotients after the first must be >= 1: {self}")
        if not self.head and not self.period:
            raise DomainError("empty continued fraction")

    @property
    def is_periodic(self) -> bool:
        return bool(self.period)

    def quotients(self) -> Iterator[int]:
        """All partial quotients c0, c1, ...; infinite when periodic."""
        if self.period:
            return chain(self.head, cycle(self.period))
        return iter(self.head)

    def __str__(self) -> str:
        head = ", ".join(map(str, self.head))
        if not self.period:
            return f"[{head}]"
        per = ", ".join(map(str, self.period))
        return f"[{head}; ({per})]" if head else f"[({per})]"


@dataclass(frozen=True)
class Convergent:
    index: int
    h: int
    k: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.h, self.k)


SEEDS = (Convergent(-2, 0, 1), Convergent(-1, 1, 0))


def _surd_floor(P: int, D: int, Q: int) -> int:
    # floor((P + sqrt(D))/Q), exact; sqrt(D) is irrational
    r = math.isqrt(D)
    if Q > 0:
        return (P + r) // Q
    return -((P + r) // -Q) - 1


def expand_surd(s: QuadraticSurd, max_steps: int = 100_000) -> CFExpansion:
    """Eventually periodic expansion of a quadratic surd.

    The period is found when the exact (P, Q) state repeats, which makes both
    the head and the period minimal.
    """
    P, D, Q = s.P, s.D, s.Q
    seen: dict[tuple[int, int], int] = {}
    quotients: list[int] = []
    for step in range(max_steps):
        state = (P, Q)
        if state in seen:
            start = seen[state]
            return CFExpansion(tuple(quotients[:start]), tuple(quotients[start:]))
        seen[state] = step
        c = _surd_floor(P, D, Q)
        quotients.append(c)
        P = c * Q - P
        Q = (D - P * P) // Q
    raise ConvergenceError(f"no period found within {max_steps} steps for {s}")


def expand_rational(q: Fraction | int) -> CFExpansion:
    """Terminating expansion of a rational by the Euclidean algorithm."""
    q = Fraction(q)
    num, den = q.numerator, q.denominator
    out = []
    while den:
        c, rem = divmod(num, den)
        out.append(c)
        num, den = den, rem
    return CFExpansion(tuple(out))


def iter_convergents(cf: CFExpansion) -> Iterator[Convergent]:
    """Convergents r_0, r_1, ... by h_i = c_i h_{i-1} + h_{i-2} (and likewise k)."""
    h2, h1 = SEEDS[0].h, SEEDS[1].h
    k2, k1 = SEEDS[0].k, SEEDS[1].k
    for i, c in enumerate(cf.quotients()):
        h2, h1 = h1, c * h1 + h2
        k2, k1 = k1, c * k1 + k2
        yield Convergent(i, h1, k1)


def convergents(cf: CFExpansion, count: int, include_seeds: bool = False) -> list[Convergent]:
    """The first ``count`` convergents r_0 .. r_{count-1}.

    With ``include_seeds`` the list is prefixed by the seed pairs at indices
    -2 and -1, so entry ``j + 2`` holds index ``j``.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    found = list(islice(iter_convergents(cf), count))
    return list(SEEDS) + found if include_seeds else found


def pell_unit_cf(a: int, sign: int) -> CFExpansion:
    """Expansion of the unit a + b*sqrt(n) from a alone.

    A positive unit (a^2 - n b^2 = 1) is [2a-1; (1, 2a-2)] and a negative one is
    [(2a)].
    """
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    if a < 1:
        raise DomainError("a must be >= 1")
    if sign == 1:
        if a < 2:
            raise DomainError("a positive unit needs a >= 2")
        return CFExpansion((2 * a - 1,), (1, 2 * a - 2))
    return CFExpansion((), (2 * a,))
