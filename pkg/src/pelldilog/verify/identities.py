"""Builders for every identity family and the verify_* entry points."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterator, Sequence, Union

from ..chebyshev import iter_chebyshev
from ..contfrac import expand_surd, iter_convergents, pell_unit_cf
from ..dilog import DilogValue, li2, rogers
from ..errors import CrossCheckError, DomainError, ExhaustionError
from ..geometry import IdealPolygon, polygon_orthospectrum, regular_ngon_terms
from ..numerics import PrecisionContext, QuadraticSurd, Real, is_square, pi
from ..pell import GOLDEN, PellSolution, fibonacci_pair, fundamental_solution, unit_powers
from .report import FAIL, PASS, IdentityJob, VerificationReport, combined_status
from .series import (
    SeriesSum,
    Term,
    TermSequence,
    certified_sum,
    lewin_integral_tail,
)

PellSource = Union[int, PellSolution]


# ---------------------------------------------------------------- reports


def _series_report(job: IdentityJob, label: str, ctx: PrecisionContext, lhs: DilogValue | tuple,
                   series: SeriesSum, notes: Sequence[str] = ()) -> VerificationReport:
    """Report for lhs = sum of a series, with the tolerance split of the truncation policy."""
    lhs_value, lhs_err = (lhs.value, lhs.abs_error_bound) if isinstance(lhs, DilogValue) else lhs
    tol = job.tolerance_value(ctx)
    budget = ctx.outward(series.rounding_budget + lhs_err, 2)
    if budget > tol / 4:
        raise ExhaustionError(
            f"{label}: rounding budget {ctx.mp.nstr(budget, 5)} exceeds tolerance/4 at "
            f"{job.precision_bits} bits"
        )
    residual = ctx.outward(abs(lhs_value - series.partial_sum), 2)
    status = PASS if residual <= tol + series.tail_bound + budget else FAIL
    return VerificationReport(
        job=job,
        label=label,
        status=status,
        lhs_value=lhs_value,
        partial_sum=series.partial_sum,
        terms_used=series.terms_used,
        tail_bound=series.tail_bound,
        rounding_budget=budget,
        residual=residual,
        notes=tuple(notes),
    )


def _composite(job: IdentityJob, subs: Sequence[VerificationReport], notes: Sequence[str] = ()) -> VerificationReport:
    return VerificationReport(
        job=job,
        label=job.identity_id,
        status=combined_status(s.status for s in subs),
        terms_used=sum(s.terms_used for s in subs),
        notes=tuple(notes),
        sub_reports=tuple(subs),
    )


def _lhs_rogers(x: Real, rel: int, ctx: PrecisionContext) -> DilogValue:
    return rogers(x, ctx, abs(x) * rel * ctx.unit)


# ---------------------------------------------------------------- sinh series


def theorem1_sequence(L: Real, ctx: PrecisionContext) -> TermSequence:
    """Arguments sinh^2(L/2)/sinh^2(kL/2) for k = 2, 3, ...; consecutive ratio <= e^-L."""
    mp = ctx.mp
    L = mp.mpf(L)
    if L <= 0:
        raise DomainError("L must be positive")
    s1 = mp.sinh(L / 2)
    unit = ctx.unit

    def generate() -> Iterator[Term]:
        k = 2
        while True:
            x = (s1 / mp.sinh(k * L / 2)) ** 2
            yield Term(x, x * (8 + 2 * k * L) * unit, f"k={k}")
            k += 1

    return TermSequence("theorem1", generate, ratio_bound=ctx.outward(mp.exp(-L), 4))


def verify_theorem1(L: Real, job: IdentityJob) -> VerificationReport:
    """L(e^-L) against sum_{k>=2} L(sinh^2(L/2)/sinh^2(kL/2))."""
    ctx = job.context
    L = ctx.mp.mpf(L)
    seq = theorem1_sequence(L, ctx)
    series = certified_sum(seq, ctx, job.tolerance_value(ctx), job.max_terms)
    lhs = _lhs_rogers(ctx.mp.exp(-L), 2, ctx)
    return _series_report(job, "theorem1", ctx, lhs, series)


# ---------------------------------------------------------------- Lewin


def lewin_sequence(ctx: PrecisionContext) -> TermSequence:
    """1/k^2 for k >= 2 with the integral tail bound."""

    def generate() -> Iterator[Term]:
        k = 2
        while True:
            yield Term(Fraction(1, k * k), 0, f"k={k}")
            k += 1

    return TermSequence("lewin", generate, tail=lambda x, index, c: lewin_integral_tail(index + 2, c))


def lewin_accelerated_sum(ctx: PrecisionContext, tolerance: Real, max_terms: int,
                          direct_terms: int = 32) -> SeriesSum:
    """Sum_{k>=2} L(1/k^2) as direct terms up to K plus an expansion of the tail.

    With a = K + 1, L(1/k^2) = sum_m k^(-2m)/m^2 + log k sum_m k^(-2m)/m, so the
    tail over k >= a is sum_m [zeta(2m, a)/m^2 + Z(2m, a)/m] with
    Z(s, a) = sum_{j>=0} log(a+j) (a+j)^-s.  Each bracket is at most
    C a^(-2m) with C = 1 + 2a + (1+a) log a, which bounds the part of the m-sum
    that is left out.
    """
    mp = ctx.mp
    K = max(int(direct_terms), 1)
    if K - 1 > max_terms:
        raise ExhaustionError(f"lewin: {K - 1} direct terms exceed max_terms={max_terms}")
    quarter = mp.mpf(tolerance) / 4
    total = mp.zero
    budget = mp.zero
    for k in range(2, K + 1):
        d = rogers(Fraction(1, k * k), ctx)
        total += d.value
        budget += d.abs_error_bound
    a = K + 1
    C = ctx.outward(1 + 2 * a + (1 + a) * mp.log(a), 4)
    q = mp.mpf(1) / (a * a)
    used = K - 1
    M = 0
    tail = ctx.outward(C * q / (1 - q), 4)
    while tail > quarter:
        M += 1
        used += 1
        if used > max_terms:
            raise ExhaustionError(f"lewin: tail expansion not below tolerance within {max_terms} terms")
        s = 2 * M
        term = mp.zeta(s, a) / (M * M) - mp.zeta(s, a, 1) / M
        total += term
        budget += 16 * ctx.unit * abs(term)
        tail = ctx.outward(C * q ** (M + 1) / (1 - q), 4)
    budget += used * ctx.unit * max(abs(total), 1)
    return SeriesSum(total, used, tail, ctx.outward(budget, 2 * used))


def verify_lewin(job: IdentityJob) -> VerificationReport:
    """sum_{k>=2} L(1/k^2) = pi^2/6.

    ``method=direct`` sums terms until the integral tail bound alone meets the
    tolerance (only practical for loose tolerances); the default accelerates
    the tail.
    """
    ctx = job.context
    tol = job.tolerance_value(ctx)
    method = job.param("method", "accelerated")
    if method == "direct":
        series = certified_sum(lewin_sequence(ctx), ctx, tol, job.max_terms)
    elif method == "accelerated":
        series = lewin_accelerated_sum(ctx, tol, job.max_terms, int(job.param("direct_terms", "32")))
    else:
        raise DomainError(f"unknown lewin method {method!r}")
    target = pi(ctx) ** 2 / 6
    return _series_report(job, "lewin", ctx, (target, 4 * ctx.unit * target), series)


# ---------------------------------------------------------------- Pell, convergent form


def _resolve(source: PellSource, allow_negative: bool) -> PellSolution:
    if isinstance(source, PellSolution):
        return source
    return fundamental_solution(int(source), allow_negative=allow_negative)


def _ratio(sol: PellSolution, ctx: PrecisionContext) -> Real:
    return ctx.outward(sol.inverse_square(ctx), 8)


def pell_positive_sequence(sol: PellSolution, ctx: PrecisionContext) -> TermSequence:
    """1/h_{2k-1}^2 from the convergents of a positive unit, checked against b_{k+1}/b."""
    if sol.sign != 1 or not sol.is_integral:
        raise DomainError("need an integral positive Pell solution")
    a, b = int(sol.a), int(sol.b)
    cf = pell_unit_cf(a, 1)
    if expand_surd(sol.surd()) != cf:
        raise CrossCheckError(f"expansion of {sol} differs from [2a-1; (1, 2a-2)]")

    def generate() -> Iterator[Term]:
        conv = iter_convergents(cf)
        hs: list[int] = []
        ks: list[int] = []
        powers = unit_powers(sol)
        next(powers)
        for k in range(1, 1 << 62):
            while len(hs) < 2 * k:
                c = next(conv)
                hs.append(c.h)
                ks.append(c.k)
            h = hs[2 * k - 1]
            bk = next(powers).b_k / b
            if bk != h:
                raise CrossCheckError(f"h[{2 * k - 1}] = {h} but b_{k + 1}/b = {bk}")
            for j in (2 * k - 2, 2 * k - 1):
                if j >= 2 and ks[j] != hs[j - 2]:
                    raise CrossCheckError(f"k[{j}] = {ks[j]} differs from h[{j - 2}] = {hs[j - 2]}")
            yield Term(Fraction(1, h * h), 0, f"h[{2 * k - 1}]={h}")

    return TermSequence(f"pell_positive n={sol.n}", generate, ratio_bound=_ratio(sol, ctx))


def verify_pell_positive(source: PellSource, job: IdentityJob) -> VerificationReport:
    """L(1/u^2) = sum_{k>=1} L(1/h_{2k-1}^2) for a positive unit u with convergents h_j/k_j."""
    ctx = job.context
    sol = _resolve(source, allow_negative=False)
    seq = pell_positive_sequence(sol, ctx)
    series = certified_sum(seq, ctx, job.tolerance_value(ctx), job.max_terms)
    lhs = _lhs_rogers(sol.inverse_square(ctx), 8, ctx)
    return _series_report(job, "pell_positive", ctx, lhs, series, (f"unit {sol}",))


class _Convergents:
    """Lazily extended convergent table indexed from -2, seeds included."""

    def __init__(self, cf) -> None:
        self._it = iter_convergents(cf)
        self.h = [0, 1]

    def __call__(self, j: int) -> int:
        while len(self.h) < j + 3:
            self.h.append(next(self._it).h)
        return self.h[j + 2]


class _Powers:
    def __init__(self, sol: PellSolution) -> None:
        self._it = unit_powers(sol)
        self.rows = [None]

    def __call__(self, k: int):
        while len(self.rows) <= k:
            self.rows.append(next(self._it))
        return self.rows[k]


def negative_index_families(sol: PellSolution, count: int = 16) -> list[str]:
    """Compare both printed index conventions for the second negative-case term with a_{2k+3}/a.

    Family A is 2H_{2k+1} - H_{2k}; family B is 2H_{2k-1} - H_{2k-2}, both for
    k >= 0.  Family B is also tried one step later (k >= 1).
    """
    a, b, n = int(sol.a), int(sol.b), sol.n
    A = a * a + n * b * b
    H = _Convergents(pell_unit_cf(A, 1))
    P = _Powers(sol)
    target = [P(2 * k + 3).a_k / a for k in range(count)]

    def first_mismatch(values) -> str:
        for k, (v, t) in enumerate(zip(values, target)):
            if v != t:
                return f"mismatch at k={k} ({v} vs {t})"
        return "matches"

    fam_a = [2 * H(2 * k + 1) - H(2 * k) for k in range(count)]
    fam_b = [2 * H(2 * k - 1) - H(2 * k - 2) for k in range(count)]
    fam_b_shift = [2 * H(2 * k + 1) - H(2 * k) for k in range(count)]
    return [
        f"2H[2k+1]-H[2k], k>=0: {first_mismatch(fam_a)}",
        f"2H[2k-1]-H[2k-2], k>=0: {first_mismatch(fam_b)}",
        f"2H[2k-1]-H[2k-2], k>=1: {first_mismatch(fam_b_shift)}",
    ]


def pell_negative_sequence(sol: PellSolution, ctx: PrecisionContext) -> TermSequence:
    """Arguments 1/(b^2 n (2H_{2k-1})^2) and 1/(2H_{2k+1} - H_{2k})^2 for k >= 0.

    H_j are the convergents of u^2, with H_{-1} = 1.  Each denominator is
    checked against n (b_{2k+2}/a)^2 and (a_{2k+3}/a)^2 from the unit powers.
    """
    if sol.sign != -1 or not sol.is_integral:
        raise DomainError("need an integral negative Pell solution")
    a, b, n = int(sol.a), int(sol.b), sol.n
    A, B = a * a + n * b * b, 2 * a * b
    cf = pell_unit_cf(A, 1)
    if expand_surd(QuadraticSurd.from_parts(A, B, n)) != cf:
        raise CrossCheckError(f"expansion of u^2 = {A} + {B}√{n} differs from [2A-1; (1, 2A-2)]")

    def generate() -> Iterator[Term]:
        H = _Convergents(cf)
        P = _Powers(sol)
        k = 0
        while True:
            first = 2 * H(2 * k - 1)
            if Fraction(b * first) != P(2 * k + 2).b_k / a:
                raise CrossCheckError(f"2bH[{2 * k - 1}] = {b * first} but b_{2 * k + 2}/a = {P(2 * k + 2).b_k / a}")
            yield Term(Fraction(1, b * b * n * first * first), 0, f"2H[{2 * k - 1}]={first}")
            second = 2 * H(2 * k + 1) - H(2 * k)
            if Fraction(second) != P(2 * k + 3).a_k / a:
                raise CrossCheckError(f"2H[{2 * k + 1}]-H[{2 * k}] = {second} but a_{2 * k + 3}/a = {P(2 * k + 3).a_k / a}")
            yield Term(Fraction(1, second * second), 0, f"2H[{2 * k + 1}]-H[{2 * k}]={second}")
            k += 1

    return TermSequence(
        f"pell_negative n={n}", generate, ratio_bound=_ratio(sol, ctx), notes=tuple(negative_index_families(sol))
    )


def verify_pell_negative(source: PellSource, job: IdentityJob) -> VerificationReport:
    """L(1/u^2) for a negative unit u, as a series over the convergents H_j of u^2."""
    ctx = job.context
    sol = _resolve(source, allow_negative=True)
    if sol.sign != -1:
        raise DomainError(f"x^2 - {sol.n} y^2 = -1 has no solution")
    seq = pell_negative_sequence(sol, ctx)
    series = certified_sum(seq, ctx, job.tolerance_value(ctx), job.max_terms)
    lhs = _lhs_rogers(sol.inverse_square(ctx), 8, ctx)
    return _series_report(job, "pell_negative", ctx, lhs, series, (f"unit {sol}",) + seq.notes)


# ---------------------------------------------------------------- Pell over Q


def pell_rational_sequence(sol: PellSolution, ctx: PrecisionContext) -> TermSequence:
    """Unit-power form: 1/(b_k/b)^2 for k >= 2 (positive), or
    1/(n (b_{2k}/a)^2) and 1/(a_{2k+1}/a)^2 for k >= 1 (negative)."""
    a, b, n = sol.a, sol.b, sol.n
    integral = sol.is_integral

    def check(q: Fraction, what: str) -> Fraction:
        if integral and q.denominator != 1:
            raise CrossCheckError(f"{what} = {q} is not an integer for an integral unit")
        return q

    def generate() -> Iterator[Term]:
        P = _Powers(sol)
        if sol.sign == 1:
            k = 2
            while True:
                r = check(P(k).b_k / b, f"b_{k}/b")
                yield Term(1 / (r * r), 0, f"b_{k}/b={r}")
                k += 1
        k = 1
        while True:
            r = check(P(2 * k).b_k / a, f"b_{2 * k}/a")
            yield Term(1 / (n * r * r), 0, f"b_{2 * k}/a={r}")
            s = check(P(2 * k + 1).a_k / a, f"a_{2 * k + 1}/a")
            yield Term(1 / (s * s), 0, f"a_{2 * k + 1}/a={s}")
            k += 1

    return TermSequence(f"pell_rational {sol}", generate, ratio_bound=_ratio(sol, ctx))


def verify_pell_rational(sol: PellSolution, job: IdentityJob) -> VerificationReport:
    """L(1/u^2) for a Pell solution over Q, summed over the powers of u."""
    ctx = job.context
    seq = pell_rational_sequence(sol, ctx)
    series = certified_sum(seq, ctx, job.tolerance_value(ctx), job.max_terms)
    lhs = _lhs_rogers(sol.inverse_square(ctx), 8, ctx)
    notes = [f"unit {sol}"]
    if sol.is_integral:
        notes.append(f"integrality of all {series.terms_used + 1} generated ratios checked")
    return _series_report(job, "pell_rational", ctx, lhs, series, notes)


def fibonacci_sequence(ctx: PrecisionContext) -> TermSequence:
    """1/(5 f_{2k}^2) and 1/g_{2k+1}^2 for k >= 1, cross-checked against the golden-ratio powers."""
    base = pell_rational_sequence(GOLDEN, ctx)

    def generate() -> Iterator[Term]:
        inner = base.generate()
        k = 1
        while True:
            t1, t2 = next(inner), next(inner)
            _, f = fibonacci_pair(2 * k)
            g, _ = fibonacci_pair(2 * k + 1)
            if t1.argument != Fraction(1, 5 * f * f) or t2.argument != Fraction(1, g * g):
                raise CrossCheckError(f"Fibonacci terms at k={k} disagree with the unit powers of phi")
            yield Term(t1.argument, 0, f"f_{2 * k}={f}")
            yield Term(t2.argument, 0, f"g_{2 * k + 1}={g}")
            k += 1

    return TermSequence("fibonacci", generate, ratio_bound=base.ratio_bound)


def verify_fibonacci(job: IdentityJob) -> VerificationReport:
    """sum_{k>=1} L(1/(5 f_{2k}^2)) + L(1/g_{2k+1}^2) = pi^2/15."""
    ctx = job.context
    series = certified_sum(fibonacci_sequence(ctx), ctx, job.tolerance_value(ctx), job.max_terms)
    target = pi(ctx) ** 2 / 15
    return _series_report(job, "fibonacci", ctx, (target, 4 * ctx.unit * target), series)


# ---------------------------------------------------------------- Chebyshev


def _chebyshev_base(x: Fraction | Real, ctx: PrecisionContext) -> Real:
    """x + sqrt(x^2 - 1) without cancellation."""
    mp = ctx.mp
    if isinstance(x, Fraction):
        p, q = x.numerator, x.denominator
        d = p * p - q * q
        if is_square(d):
            return ctx.real(Fraction(p + math.isqrt(d), q))
        return QuadraticSurd(p, d, q).value(ctx)
    return x + mp.sqrt((x - 1) * (x + 1))


def chebyshev_sequence(x: Fraction | Real, ctx: PrecisionContext) -> TermSequence:
    """1/U_n(x)^2 for n >= 1; for integer x each U_{k-1}(x) is checked against b_k/b of x + sqrt(x^2-1)."""
    exact = isinstance(x, Fraction)
    if not x > 1:
        raise DomainError("x must exceed 1")
    pell = None
    if exact and x.denominator == 1:
        xi = int(x)
        pell = PellSolution(xi, 1, xi * xi - 1, 1)
    unit = ctx.unit

    def generate() -> Iterator[Term]:
        values = iter_chebyshev("U", x)
        next(values)
        powers = unit_powers(pell) if pell else None
        if powers:
            next(powers)
        for n, U in enumerate(values, start=1):
            if powers is not None:
                bk = next(powers).b_k
                if bk != U:
                    raise CrossCheckError(f"U_{n}({x}) = {U} but b_{n + 1}/b = {bk}")
            if exact:
                yield Term(1 / (U * U), 0, f"U_{n}={U}")
            else:
                v = 1 / (U * U)
                yield Term(v, v * (8 * n + 8) * unit, f"U_{n}")

    base = _chebyshev_base(x, ctx)
    return TermSequence(f"chebyshev x={x}", generate, ratio_bound=ctx.outward(1 / (base * base), 8))


def verify_chebyshev(x: Fraction | Real, job: IdentityJob) -> VerificationReport:
    """L(1/(x + sqrt(x^2-1))^2) = sum_{n>=1} L(1/U_n(x)^2) for x > 1."""
    ctx = job.context
    if isinstance(x, (int, str)):
        x = Fraction(x)
    seq = chebyshev_sequence(x, ctx)
    series = certified_sum(seq, ctx, job.tolerance_value(ctx), job.max_terms)
    base = _chebyshev_base(x, ctx)
    lhs = _lhs_rogers(1 / (base * base), 8, ctx)
    notes = ("U-values checked against Pell b_k/b",) if isinstance(x, Fraction) and x.denominator == 1 else ()
    return _series_report(job, "chebyshev", ctx, lhs, series, notes)


# ---------------------------------------------------------------- finite identities

Piece = tuple  # (coefficient, "li2" | "rogers", argument)


def _finite_report(job: IdentityJob, label: str, ctx: PrecisionContext, pieces: Sequence[Piece],
                   rhs_parts: Sequence[tuple[Fraction, Real]]) -> VerificationReport:
    """Report for a finite combination sum c_i F(x_i) against sum d_j v_j."""
    mp = ctx.mp
    u = ctx.unit
    lhs = mp.zero
    budget = mp.zero
    scale = mp.zero
    for coef, fn, arg in pieces:
        d = (li2 if fn == "li2" else rogers)(arg, ctx)
        c = ctx.real(Fraction(coef))
        lhs += c * d.value
        budget += abs(c) * d.abs_error_bound
        scale += abs(c * d.value)
    rhs = mp.zero
    rhs_scale = mp.zero
    for coef, v in rhs_parts:
        c = ctx.real(Fraction(coef))
        rhs += c * v
        rhs_scale += abs(c * v)
    budget += (2 * len(pieces) + 2) * u * scale + (8 + 2 * len(rhs_parts)) * u * rhs_scale
    series = SeriesSum(rhs, len(pieces), mp.zero, ctx.outward(budget, 4))
    return _series_report(job, label, ctx, (lhs, mp.zero), series)


def _logs(ctx: PrecisionContext):
    mp = ctx.mp
    return pi(ctx) ** 2, mp.log(2), mp.log(3)


def ramanujan_identities(ctx: PrecisionContext) -> dict[str, tuple[list[Piece], list[tuple[Fraction, Real]]]]:
    """Ramanujan's five Li2 value identities and their two reduced Rogers forms.

    Item 4 carries +log^2(3)/6 on the right; that is the sign forced by
    Landau's identity L(-1/3) = -L(1/4) together with the reduced form.
    """
    p2, l2, l3 = _logs(ctx)
    F = Fraction
    return {
        "ramanujan_1": (
            [(1, "li2", F(1, 3)), (F(-1, 6), "li2", F(1, 9))],
            [(F(1, 18), p2), (F(-1, 6), l3 * l3)],
        ),
        "ramanujan_2": (
            [(1, "li2", F(-1, 2)), (F(1, 6), "li2", F(1, 9))],
            [(F(-1, 18), p2), (1, l2 * l3), (F(-1, 2), l2 * l2), (F(-1, 3), l3 * l3)],
        ),
        "ramanujan_3": (
            [(1, "li2", F(1, 4)), (F(1, 3), "li2", F(1, 9))],
            [(F(1, 18), p2), (2, l2 * l3), (-2, l2 * l2), (F(-2, 3), l3 * l3)],
        ),
        "ramanujan_4": (
            [(1, "li2", F(-1, 3)), (F(-1, 3), "li2", F(1, 9))],
            [(F(-1, 18), p2), (F(1, 6), l3 * l3)],
        ),
        "ramanujan_5": (
            [(1, "li2", F(-1, 8)), (1, "li2", F(1, 9))],
            [(F(-1, 2), (2 * l3 - 3 * l2) ** 2)],
        ),
        "reduced_1": (
            [(1, "rogers", F(1, 4)), (F(1, 3), "rogers", F(1, 9))],
            [(F(1, 18), p2)],
        ),
        "reduced_2": (
            [(1, "rogers", F(1, 3)), (F(-1, 6), "rogers", F(1, 9))],
            [(F(1, 18), p2)],
        ),
        "hexagon": (
            [(6, "rogers", F(1, 3)), (3, "rogers", F(1, 4))],
            [(F(1, 2), p2)],
        ),
    }


def bbp_identities(ctx: PrecisionContext) -> dict[str, tuple[list[Piece], list[tuple[Fraction, Real]]]]:
    """36 F(1/2) - 36 F(1/4) - 12 F(1/8) + 6 F(1/64) = pi^2 for F = Li2 and F = L."""
    p2 = pi(ctx) ** 2
    F = Fraction
    out = {}
    for label, fn in (("bbp", "li2"), ("bbp_rogers", "rogers")):
        out[label] = (
            [(36, fn, F(1, 2)), (-36, fn, F(1, 4)), (-12, fn, F(1, 8)), (6, fn, F(1, 64))],
            [(1, p2)],
        )
    return out


def verify_hexagon_ramanujan(job: IdentityJob) -> VerificationReport:
    """Ramanujan's value identities, their reduced forms, the hexagon identity and the BBP identity."""
    ctx = job.context
    table = {**ramanujan_identities(ctx), **bbp_identities(ctx)}
    subs = [_finite_report(job, label, ctx, pieces, rhs) for label, (pieces, rhs) in table.items()]
    return _composite(job, subs)


def verify_bbp64(job: IdentityJob) -> VerificationReport:
    ctx = job.context
    subs = [_finite_report(job, label, ctx, p, r) for label, (p, r) in bbp_identities(ctx).items()]
    return _composite(job, subs)


# ---------------------------------------------------------------- ideal polygons


def _multiset_note(values: Sequence[Real], ctx: PrecisionContext, max_den: int = 1000) -> str:
    """Describe term values that are within 2^-(precision/2) of small rationals."""
    counts: dict[str, int] = {}
    eps = ctx.mp.ldexp(1, -ctx.precision_bits // 2)
    for v in values:
        q = Fraction(float(v)).limit_denominator(max_den)
        key = str(q) if abs(v - ctx.real(q)) < eps else ctx.mp.nstr(v, 15)
        counts[key] = counts.get(key, 0) + 1
    return "terms: " + ", ".join(f"{k} x{c}" for k, c in sorted(counts.items()))


def verify_ngon(n: int, job: IdentityJob) -> VerificationReport:
    """Regular ideal n-gon: pairwise orthospectrum sum and per-vertex weighted sum."""
    if n < 4:
        raise DomainError("n must be >= 4")
    ctx = job.context
    mp = ctx.mp
    u = ctx.unit
    poly = IdealPolygon.regular(n, ctx)
    terms = polygon_orthospectrum(poly, ctx)
    p2 = pi(ctx) ** 2

    def summed(weighted: Sequence[tuple[Real, Real, Real]]) -> tuple[Real, Real]:
        total = mp.zero
        budget = mp.zero
        for w, x, rel in weighted:
            d = rogers(x, ctx, x * rel)
            total += w * d.value
            budget += abs(w) * d.abs_error_bound
        return total, budget + (len(weighted) + 2) * u * max(abs(total), 1)

    pair_sum, pair_budget = summed([(mp.one, t.value, t.rel_error) for t in terms])
    target = (n - 3) * p2 / 6
    pair = _series_report(job, "pairwise", ctx, (target, 4 * u * target),
                          SeriesSum(pair_sum, len(terms), mp.zero, pair_budget),
                          (_multiset_note([t.value for t in terms], ctx),))
    vertex_terms = regular_ngon_terms(n, ctx)
    vert_sum, vert_budget = summed([(w, x, 24 * u) for w, x in vertex_terms])
    vtarget = (n - 3) * p2 / (6 * n)
    vertex = _series_report(job, "per_vertex", ctx, (vtarget, 4 * u * vtarget),
                            SeriesSum(vert_sum, len(vertex_terms), mp.zero, vert_budget))
    return _composite(job, [pair, vertex])


# ---------------------------------------------------------------- classical functional equations

FUNCTIONAL_EQUATIONS = ("squaring_li2", "squaring", "reflection", "abel", "landau")


def _random_unit(rng: random.Random) -> Fraction:
    return Fraction(rng.getrandbits(64) | 1, 1 << 64)


def _equation_pieces(name: str, rng: random.Random, ctx: PrecisionContext):
    """(pieces, constant) for one random instance; the identity reads sum c F(x) = constant."""
    F = Fraction
    if name in ("squaring_li2", "squaring"):
        fn = "li2" if name == "squaring_li2" else "rogers"
        z = _random_unit(rng)
        return [(1, fn, z), (1, fn, -z), (F(-1, 2), fn, z * z)], (F(0), ctx.mp.zero)
    if name == "reflection":
        x = _random_unit(rng)
        return [(1, "rogers", x), (1, "rogers", 1 - x)], (F(1, 6), pi(ctx) ** 2)
    if name == "abel":
        x, y = _random_unit(rng), _random_unit(rng)
        return [
            (1, "rogers", x),
            (1, "rogers", y),
            (-1, "rogers", x * y),
            (-1, "rogers", x * (1 - y) / (1 - x * y)),
            (-1, "rogers", y * (1 - x) / (1 - x * y)),
        ], (F(0), ctx.mp.zero)
    if name == "landau":
        # -1/x stays inside [-1, 1] only for x >= 1
        x = 1 + F(rng.getrandbits(64), 1 << 58)
        return [(1, "rogers", -1 / x), (1, "rogers", 1 / (x + 1))], (F(0), ctx.mp.zero)
    raise DomainError(f"unknown functional equation {name!r}")


def functional_equation_residuals(name: str, ctx: PrecisionContext, points: int = 100,
                                  seed: int = 0) -> list[tuple[Real, Real]]:
    """(residual, certified rounding budget) for ``points`` random instances of one identity."""
    rng = random.Random(f"{name}:{seed}")
    u = ctx.unit
    out = []
    for _ in range(points):
        pieces, (c0, v0) = _equation_pieces(name, rng, ctx)
        total = ctx.mp.zero
        budget = ctx.mp.zero
        scale = ctx.mp.zero
        for coef, fn, arg in pieces:
            d = (li2 if fn == "li2" else rogers)(arg, ctx)
            c = ctx.real(Fraction(coef))
            total += c * d.value
            budget += abs(c) * d.abs_error_bound
            scale += abs(c * d.value)
        const = ctx.real(c0) * v0
        budget += (2 * len(pieces) + 4) * u * (scale + abs(const)) + 8 * u * abs(const)
        out.append((ctx.outward(abs(total - const), 2), ctx.outward(budget, 4)))
    return out


def verify_classical(job: IdentityJob) -> VerificationReport:
    """Squaring, reflection, Abel and Landau identities at random points."""
    ctx = job.context
    tol = job.tolerance_value(ctx)
    points = int(job.param("points", "100"))
    seed = int(job.param("seed", "0"))
    subs = []
    for name in FUNCTIONAL_EQUATIONS:
        rows = functional_equation_residuals(name, ctx, points, seed)
        worst = max(rows, key=lambda rb: rb[0] - rb[1])
        ok = all(r <= tol + b for r, b in rows)
        subs.append(
            VerificationReport(
                job=job,
                label=name,
                status=PASS if ok else FAIL,
                lhs_value=worst[0],
                partial_sum=ctx.mp.zero,
                terms_used=points,
                tail_bound=ctx.mp.zero,
                rounding_budget=worst[1],
                residual=worst[0],
                notes=(f"{points} random points, seed {seed}; worst point reported",),
            )
        )
    return _composite(job, subs)
