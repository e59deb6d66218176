"""Real dilogarithm Li2 and the Rogers dilogarithm with certified error bounds.

The power series is only ever summed for |z| <= 1/2.  Arguments in (1/2, 1)
go through Euler's reflection and arguments in [-1, -1/2) through the Landen
map z -> z/(z - 1), both of which land in [1/3, 1/2].  The series itself is
summed in fixed-point integer arithmetic, which makes the truncation and
rounding error an explicit count of units.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath.libmp import to_fixed

from .errors import DomainError
from .numerics import Number, PrecisionContext, Real, pi


_FIXED_EXTRA = 20


@dataclass(frozen=True)
class DilogValue:
    argument: Real
    value: Real
    abs_error_bound: Real


def _as_real(z: Number | str, ctx: PrecisionContext) -> tuple[Real, Real]:
    """Round ``z`` into the working precision; returns (value, conversion error bound)."""
    mp = ctx.mp
    if isinstance(z, str):
        try:
            z = Fraction(z)
        except ValueError:
            pass
    if isinstance(z, (int, Fraction)):
        q = Fraction(z)
        x = ctx.real(q)
        if q.denominator & (q.denominator - 1) == 0 and abs(q.numerator).bit_length() <= ctx.working_bits:
            return x, mp.zero
        return x, 2 * abs(x) * ctx.unit
    x = mp.mpf(z)
    if isinstance(z, str) or x != z:
        return x, abs(x) * ctx.unit
    return x, mp.zero


def _series_quotient(z: Real, ctx: PrecisionContext) -> tuple[Real, Real, int]:
    """S(z) = sum_{n>=1} z**(n-1)/n**2 for |z| <= 1/2, so that Li2(z) = z*S(z).

    Returns (S, absolute error bound on S, number of terms).  In fixed point
    with unit 2**-wp the running power carries at most 4 units of error, each
    term adds one truncation, and summation stops once the remaining tail
    |z|**N / ((N+1)**2 (1-|z|)) is below one unit.  The fixed-point scale
    carries _FIXED_EXTRA bits beyond the working precision.
    """
    wp = ctx.working_bits + _FIXED_EXTRA
    zf = to_fixed(z._mpf_, wp)
    one = 1 << wp
    power = one
    total = one
    n = 1
    while True:
        power = (power * zf) >> wp
        m = (n + 1) * (n + 1)
        if 2 * (abs(power) + 4) <= m:
            break
        n += 1
        total += power // m if power >= 0 else -((-power) // m)
    err_units = n + 11
    mp = ctx.mp
    return mp.ldexp(total, -wp), mp.ldexp(err_units, -wp), n


def _li2_core(x: Real, ctx: PrecisionContext) -> tuple[Real, Real]:
    """Li2 at an exactly representable x in [-1, 1]: (value, error bound)."""
    mp = ctx.mp
    u = ctx.unit
    if x == 0:
        return mp.zero, mp.zero
    if x == 1:
        v = pi(ctx) ** 2 / 6
        return v, 4 * u * v
    if x == -1:
        v = -(pi(ctx) ** 2) / 12
        return v, 4 * u * abs(v)
    if abs(x) <= 0.5:
        s, s_err, _ = _series_quotient(x, ctx)
        v = x * s
        return v, abs(x) * s_err + 2 * u * abs(v)
    if x > 0:
        # Li2(x) = pi^2/6 - log(x) log(1-x) - Li2(1-x); 1-x is exact here.
        w = 1 - x
        inner, inner_err = _li2_core(w, ctx)
        v = pi(ctx) ** 2 / 6 - mp.log(x) * mp.log(w) - inner
        return v, inner_err + 24 * u
    # Li2(x) = -log(1-x)^2/2 - Li2(x/(x-1)) with x/(x-1) in [1/3, 1/2].
    w = x / (x - 1)
    inner, inner_err = _li2_core(w, ctx)
    lg = mp.log(1 - x)
    v = -lg * lg / 2 - inner
    return v, inner_err + 2 * u * li2_slope(w, ctx) + 24 * u


def li2_slope(z: Real, ctx: PrecisionContext) -> Real:
    """|Li2'(z)| = |log(1-z)/z|, continuous at 0."""
    mp = ctx.mp
    if z == 0:
        return mp.one
    return abs(mp.log1p(-z) / z)


def rogers_slope(z: Real, ctx: PrecisionContext) -> Real:
    """|d/dz L(z)| = |log(1-z)/z + log|z|/(1-z)| / 2 for z in (-1, 1), z != 0."""
    mp = ctx.mp
    return abs(mp.log1p(-z) / z + mp.log(abs(z)) / (1 - z)) / 2


def _perturbation(z: Real, dz: Real, slope, ctx: PrecisionContext) -> Real:
    if dz == 0:
        return ctx.mp.zero
    if dz > abs(z) / 4 or dz > (1 - z) / 4:
        raise DomainError("argument error too large relative to the argument")
    return 2 * slope(z, ctx) * dz


def _check_domain(x: Real) -> None:
    if not -1 <= x <= 1:
        raise DomainError(f"argument {x} outside [-1, 1]")


def li2(z: Number | str, ctx: PrecisionContext, arg_error: Number = 0) -> DilogValue:
    """Li2(z) for real -1 <= z <= 1.

    ``arg_error`` is an absolute bound on how far ``z`` may be from the
    intended argument; its effect is folded into the returned bound.
    """
    x, conv = _as_real(z, ctx)
    _check_domain(x)
    value, err = _li2_core(x, ctx)
    dz = conv + ctx.real(arg_error)
    if dz:
        if x in (-1, 1):
            raise DomainError("inexact argument at a branch endpoint")
        err += _perturbation(x, dz, li2_slope, ctx)
    return DilogValue(x, value, ctx.outward(err, 4))


def rogers(z: Number | str, ctx: PrecisionContext, arg_error: Number = 0) -> DilogValue:
    """Rogers dilogarithm L(z) = Li2(z) + log|z| log(1-z)/2 on [-1, 1].

    L(0) = 0 exactly, without touching log 0.
    """
    mp = ctx.mp
    u = ctx.unit
    x, conv = _as_real(z, ctx)
    _check_domain(x)
    dz = conv + ctx.real(arg_error)
    if x == 0:
        if dz:
            raise DomainError("inexact argument at 0")
        return DilogValue(x, mp.zero, mp.zero)
    base, err = _li2_core(x, ctx)
    if x == 1 or x == -1:
        if dz:
            raise DomainError("inexact argument at a branch endpoint")
        # log|x| = 0 at both endpoints
        return DilogValue(x, base, ctx.outward(err, 4))
    corr = mp.log(abs(x)) * mp.log1p(-x) / 2
    value = base + corr
    err += 6 * u * abs(corr) + 2 * u * abs(value)
    if dz:
        err += _perturbation(x, dz, rogers_slope, ctx)
    return DilogValue(x, value, ctx.outward(err, 4))


_CLOSED = (
    ("0", Fraction(0)),
    ("1", Fraction(1, 6)),
    ("1/2", Fraction(1, 12)),
    ("phi^-1", Fraction(1, 10)),
    ("phi^-2", Fraction(1, 15)),
)


def closed_values() -> list[tuple[str, Fraction]]:
    """Known closed forms of the Rogers dilogarithm as (argument, multiple of pi^2)."""
    return list(_CLOSED)


def closed_value_argument(label: str, ctx: PrecisionContext) -> Real:
    mp = ctx.mp
    phi = (1 + mp.sqrt(5)) / 2
    table = {
        "0": mp.zero,
        "1": mp.one,
        "1/2": mp.mpf(0.5),
        "phi^-1": phi - 1,
        "phi^-2": 2 - phi,
    }
    try:
        return table[label]
    except KeyError:
        raise DomainError(f"no closed value for {label!r}") from None
