"""Acceptance criteria, one test each, every one at its stated tolerance.

Each test prints a single ``[PASS]``/``[FAIL]`` line; run with ``pytest -v``
or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction
from itertools import islice
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from audit import extension_audit  # noqa: E402
from oracles import brute_force_pell  # noqa: E402
from pelldilog.chebyshev import iter_chebyshev  # noqa: E402
from pelldilog.dilog import closed_value_argument, rogers  # noqa: E402
from pelldilog.geometry import IdealPolygon, polygon_orthospectrum  # noqa: E402
from pelldilog.numerics import PrecisionContext, is_square, pi  # noqa: E402
from pelldilog.pell import GOLDEN, fundamental_solution, unit_power  # noqa: E402
from pelldilog.verify import (  # noqa: E402
    FUNCTIONAL_EQUATIONS,
    PASS,
    IdentityJob,
    chebyshev_sequence,
    default_suite,
    fibonacci_sequence,
    functional_equation_residuals,
    lewin_sequence,
    pell_negative_sequence,
    pell_positive_sequence,
    pell_rational_sequence,
    reports_to_json,
    run_suite,
    theorem1_sequence,
    verify_chebyshev,
    verify_fibonacci,
    verify_hexagon_ramanujan,
    verify_lewin,
    verify_ngon,
    verify_pell_negative,
    verify_pell_positive,
    verify_theorem1,
)


def report_line(number: int, title: str, ok: bool, detail: str, seconds: float) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d} {title}: {detail} ({seconds:.2f} s)"


def check(number, title, fn, capsys=None):
    start = time.perf_counter()
    ok, detail = fn()
    line = report_line(number, title, ok, detail, time.perf_counter() - start)
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    assert ok, line


def certified(report, tol: float) -> bool:
    """Passed, and residual plus certified gap is itself within the tolerance."""
    return report.status == PASS and float(report.residual + report.certified_gap) <= tol


def args(seq, count):
    return [t.argument for t in islice(seq.generate(), count)]


def job(identity, tol="1e-30", bits=256, **params):
    return IdentityJob(identity, params, bits, tol)


# ---------------------------------------------------------------- criteria


def closed_values():
    ctx = PrecisionContext(512)
    worst = 0.0
    for label, mult in (("1/2", Fraction(1, 12)), ("phi^-1", Fraction(1, 10)), ("phi^-2", Fraction(1, 15))):
        x = closed_value_argument(label, ctx)
        d = rogers(x, ctx, 0 if label == "1/2" else abs(x) * 4 * ctx.unit)
        err = abs(d.value - ctx.real(mult) * pi(ctx) ** 2) + d.abs_error_bound
        worst = max(worst, float(err))
    return worst <= 1e-60, f"worst residual + bound {worst:.3e} <= 1e-60 at 512 bits"


def classical():
    ctx = PrecisionContext(256)
    bad = 0
    for name in FUNCTIONAL_EQUATIONS:
        bad += sum(r > b for r, b in functional_equation_residuals(name, ctx, 100, seed=2024))
    return bad == 0, f"{len(FUNCTIONAL_EQUATIONS)} identities x 100 points, {bad} over budget"


def lewin():
    r = verify_lewin(job("lewin"))
    return certified(r, 1e-30), f"residual {float(r.residual):.2e}, gap {float(r.certified_gap):.2e}, {r.terms_used} terms"


def theorem1():
    ctx = PrecisionContext(256)
    mp = ctx.mp
    Ls = [mp.mpf("0.1"), mp.mpf(1), 2 * mp.log(1 + mp.sqrt(2)), 2 * mp.log(3 + 2 * mp.sqrt(2)), mp.mpf(5)]
    reps = [verify_theorem1(L, job("theorem1", tol="1e-40")) for L in Ls]
    ok = all(certified(r, 1e-40) for r in reps)
    worst = max(float(r.residual + r.certified_gap) for r in reps)
    return ok, f"5 values of L, worst residual + gap {worst:.2e} <= 1e-40"


def pell_positive():
    ctx = PrecisionContext(256)
    d2 = [t.denominator for t in args(pell_positive_sequence(fundamental_solution(2, False), ctx), 4)]
    d13 = [t.denominator for t in args(pell_positive_sequence(fundamental_solution(13, False), ctx), 3)]
    r2, r13 = verify_pell_positive(2, job("pell_positive")), verify_pell_positive(13, job("pell_positive"))
    ok = (d2 == [6 ** 2, 35 ** 2, 204 ** 2, 1189 ** 2] and d13 == [1298 ** 2, 1684803 ** 2, 2186872996 ** 2]
          and certified(r2, 1e-30) and certified(r13, 1e-30))
    # the left side is L(1/(3+2 sqrt 2)^2)
    u = 3 + 2 * ctx.mp.sqrt(2)
    ok = ok and abs(r2.lhs_value - rogers(1 / u ** 2, ctx, 8 * ctx.unit / u ** 2).value) < 1e-70
    return ok, f"denominators exact; residuals {float(r2.residual):.1e}, {float(r13.residual):.1e}"


def pell_negative():
    ctx = PrecisionContext(256)
    got = args(pell_negative_sequence(fundamental_solution(2), ctx), 7)
    expect = [Fraction(1, 2 * 2 ** 2), Fraction(1, 7 ** 2), Fraction(1, 2 * 12 ** 2), Fraction(1, 41 ** 2),
              Fraction(1, 2 * 70 ** 2), Fraction(1, 239 ** 2), Fraction(1, 2 * 408 ** 2)]
    r = verify_pell_negative(2, job("pell_negative"))
    u = 3 + 2 * ctx.mp.sqrt(2)
    lhs_ok = abs(r.lhs_value - rogers(1 / u, ctx, 8 * ctx.unit / u).value) < 1e-70
    return got == expect and certified(r, 1e-30) and lhs_ok, \
        f"seven arguments exact; residual {float(r.residual):.1e} vs L(1/(3+2 sqrt 2))"


def cross_check():
    ctx = PrecisionContext(256)
    checked = 0
    for n in (2, 3, 5, 10, 13):
        sol = fundamental_solution(n)
        if sol.sign == 1:
            conv = args(pell_positive_sequence(sol, ctx), 15)
            power = args(pell_rational_sequence(sol, ctx), 15)
        else:
            # two terms per k, k = 0 .. 15
            conv = args(pell_negative_sequence(sol, ctx), 32)
            power = args(pell_rational_sequence(sol, ctx), 32)
        if [t.denominator for t in conv] != [t.denominator for t in power]:
            return False, f"mismatch for n={n}"
        checked += len(conv)
    return True, f"{checked} denominators equal as exact integers"


def fibonacci():
    r = verify_fibonacci(job("fibonacci"))
    return certified(r, 1e-30), f"residual {float(r.residual):.1e}, gap {float(r.certified_gap):.1e}"


def chebyshev():
    ctx = PrecisionContext(256)
    reps = [verify_chebyshev(x, job("chebyshev")) for x in (Fraction(3, 2), Fraction(2), Fraction(3))]
    linked = True
    for x in (2, 3):
        sol = fundamental_solution(x * x - 1, allow_negative=False)
        us = list(islice(iter_chebyshev("U", x), 20))
        linked &= all(us[k - 1] == unit_power(sol, k).b_k / sol.b for k in range(1, 21))
        terms = args(chebyshev_sequence(Fraction(x), ctx), 19)
        linked &= [t.denominator for t in terms] == [int(u) ** 2 for u in us[1:]]
    return all(certified(r, 1e-30) for r in reps) and linked, "x = 3/2, 2, 3 certified; U-values equal b_k/b"


def pell_oracle():
    mismatches = []
    count = 0
    for n in range(2, 201):
        if is_square(n):
            continue
        count += 1
        s = fundamental_solution(n)
        if (s.a, s.b, s.sign) != brute_force_pell(n):
            mismatches.append(n)
    specific = (
        (fundamental_solution(2).a, fundamental_solution(2).b, fundamental_solution(2).sign) == (1, 1, -1)
        and (fundamental_solution(13).a, fundamental_solution(13).b, fundamental_solution(13).sign) == (18, 5, -1)
        and (fundamental_solution(13, False).a, fundamental_solution(13, False).b) == (649, 180)
    )
    return not mismatches and specific, f"{count} values of n agree with brute force; mismatches {mismatches}"


def polygons():
    ctx = PrecisionContext(256)
    reps = [verify_ngon(n, job("ngon")) for n in range(4, 13)]
    ok = all(r.status == PASS for r in reps)
    ok &= all(float(s.residual + s.certified_gap) <= 1e-30 for r in reps for s in r.sub_reports)
    terms = polygon_orthospectrum(IdealPolygon.regular(6, ctx), ctx)
    third = sum(abs(t.value - ctx.real(Fraction(1, 3))) < 2 ** -250 for t in terms)
    quarter = sum(abs(t.value - ctx.real(Fraction(1, 4))) < 2 ** -250 for t in terms)
    hexagon = [s for s in verify_hexagon_ramanujan(job("hexagon_ramanujan")).sub_reports if s.label == "hexagon"][0]
    ok &= (third, quarter, len(terms)) == (6, 3, 9) and certified(hexagon, 1e-30)
    return ok, f"n = 4..12 certified; hexagon terms 1/3 x{third}, 1/4 x{quarter}"


def ramanujan():
    r = verify_hexagon_ramanujan(job("hexagon_ramanujan"))
    wanted = ["ramanujan_1", "ramanujan_2", "ramanujan_3", "ramanujan_4", "ramanujan_5", "reduced_1", "reduced_2", "bbp"]
    subs = {s.label: s for s in r.sub_reports}
    ok = all(certified(subs[w], 1e-30) for w in wanted)
    worst = max(float(subs[w].residual) for w in wanted)
    return ok, f"{len(wanted)} identities, worst residual {worst:.1e}"


def tail_audit():
    ctx = PrecisionContext(128)
    mp = ctx.mp
    seqs = [theorem1_sequence(mp.mpf(L), ctx) for L in ("0.1", "0.5", "1", "2", "5")]
    seqs += [pell_positive_sequence(fundamental_solution(n, False), ctx) for n in (2, 3, 7, 13)]
    seqs += [pell_negative_sequence(fundamental_solution(n), ctx) for n in (2, 5, 13)]
    seqs += [pell_rational_sequence(GOLDEN, ctx), fibonacci_sequence(ctx)]
    seqs += [chebyshev_sequence(x, ctx) for x in (Fraction(9, 8), Fraction(3, 2), Fraction(2), Fraction(3))]
    configs = [(s, mp.mpf(t)) for s in seqs for t in ("1e-8", "1e-16")]
    configs.append((lewin_sequence(PrecisionContext(96)), mp.mpf("0.2")))
    sound = 0
    for seq, tol in configs:
        c = PrecisionContext(96) if seq.description == "lewin" else ctx
        _, tail, moved = extension_audit(seq, c, tol, max_terms=10_000)
        sound += moved < tail
    return sound == len(configs), f"{sound}/{len(configs)} configurations within the reported tail"


def determinism():
    a = reports_to_json(run_suite(default_suite()))
    b = reports_to_json(run_suite(default_suite()))
    reports = run_suite(default_suite())
    return a == b and all(r.passed for r in reports), f"{len(a)} bytes identical across runs; all jobs pass"


CRITERIA = [
    (1, "closed values", closed_values),
    (2, "classical functional equations", classical),
    (3, "Lewin identity", lewin),
    (4, "sinh-series identity", theorem1),
    (5, "convergent identity, positive units", pell_positive),
    (6, "convergent identity, negative units", pell_negative),
    (7, "convergent vs unit-power terms", cross_check),
    (8, "Fibonacci identity", fibonacci),
    (9, "Chebyshev identity", chebyshev),
    (10, "Pell solver oracle", pell_oracle),
    (11, "ideal polygons", polygons),
    (12, "Ramanujan and BBP identities", ramanujan),
    (13, "tail-bound soundness audit", tail_audit),
    (14, "determinism of the default suite", determinism),
]


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, capsys):
    check(number, title, fn, capsys)


if __name__ == "__main__":
    failed = 0
    for number, title, fn in CRITERIA:
        try:
            check(number, title, fn)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
