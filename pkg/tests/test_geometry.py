import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pelldilog.dilog import rogers
from pelldilog.errors import DomainError
from pelldilog.geometry import (
    INFINITY,
    IdealPolygon,
    annulus_boundary_term,
    annulus_cross_ratio_term,
    annulus_terms,
    cross_ratio,
    polygon_orthospectrum,
    regular_ngon_terms,
)
from pelldilog.numerics import PrecisionContext, pi


def test_cross_ratio_with_infinity(ctx128):
    for lam in (Fraction(3), Fraction(17, 5)):
        assert cross_ratio(INFINITY, 0, 1, lam, ctx128) == ctx128.real((lam - 1) / lam)


def test_cross_ratio_simple(ctx128):
    assert cross_ratio(0, 1, 2, 3, ctx128) == 0.25


def test_cross_ratio_degenerate(ctx128):
    with pytest.raises(DomainError):
        cross_ratio(0, 1, 1, 3, ctx128)
    with pytest.raises(DomainError):
        cross_ratio(INFINITY, INFINITY, 1, 3, ctx128)


@given(st.lists(st.fractions(-100, 100, max_denominator=100), min_size=4, max_size=4, unique=True),
       st.fractions(-1000, 1000, max_denominator=1000))
def test_cross_ratio_translation_invariant(pts, c):
    ctx = PrecisionContext(128)
    assert cross_ratio(*pts, ctx) == cross_ratio(*(p + c for p in pts), ctx)


def test_polygon_invariants(ctx128):
    for n in range(4, 13):
        P = IdealPolygon.regular(n, ctx128)
        assert P.cusp_count == n
        assert P.euler_characteristic == 1 - Fraction(n, 2)
        assert 6 * P.euler_characteristic + P.cusp_count == 6 - 2 * n
        assert len(P.orthogeodesic_pairs()) == n * (n - 3) // 2


def test_polygon_order_enforced():
    with pytest.raises(DomainError):
        IdealPolygon((0, 2, 1, 3))
    with pytest.raises(DomainError):
        IdealPolygon((0, 1, 2))


def test_square_terms(ctx256):
    terms = polygon_orthospectrum(IdealPolygon.regular(4, ctx256), ctx256)
    assert len(terms) == 2
    for t in terms:
        assert abs(t.value - 0.5) < 2 ** -250


def test_pentagon_terms(ctx256):
    mp = ctx256.mp
    phi2 = ((1 + mp.sqrt(5)) / 2) ** -2
    terms = polygon_orthospectrum(IdealPolygon.regular(5, ctx256), ctx256)
    assert len(terms) == 5
    assert all(abs(t.value - phi2) < 2 ** -250 for t in terms)


def test_hexagon_terms(ctx256):
    values = sorted(t.value for t in polygon_orthospectrum(IdealPolygon.regular(6, ctx256), ctx256))
    assert all(abs(v - 0.25) < 2 ** -250 for v in values[:3])
    assert all(abs(v - ctx256.real(Fraction(1, 3))) < 2 ** -250 for v in values[3:])
    assert len(values) == 9


def test_regular_terms_small_cases(ctx256):
    mp = ctx256.mp
    assert [(float(w), float(x)) for w, x in regular_ngon_terms(4, ctx256)] == [(0.5, 0.5)]
    six = regular_ngon_terms(6, ctx256)
    assert len(six) == 2 and abs(six[0][1] - mp.mpf(1) / 3) < 2 ** -250 and six[1][0] == 0.5
    assert len(regular_ngon_terms(5, ctx256)) == 1


@pytest.mark.parametrize("n", range(4, 13))
def test_per_vertex_times_n_equals_pairwise(ctx256, n):
    per = sum(w * rogers(x, ctx256, x * 32 * ctx256.unit).value for w, x in regular_ngon_terms(n, ctx256))
    pair = sum(rogers(t.value, ctx256, t.value * t.rel_error).value
               for t in polygon_orthospectrum(IdealPolygon.regular(n, ctx256), ctx256))
    assert abs(n * per - pair) < 2 ** -240
    assert abs(pair - (n - 3) * pi(ctx256) ** 2 / 6) < 2 ** -240


def test_printed_upper_limit_double_counts(ctx256):
    # summing to floor(n/2) as well as adding the half-weight term overshoots for even n
    mp = ctx256.mp
    n = 6
    s1 = mp.sin(mp.pi / n) ** 2
    literal = sum(rogers(s1 / mp.sin(k * mp.pi / n) ** 2, ctx256).value for k in range(2, n // 2 + 1))
    literal += rogers(s1, ctx256).value / 2
    assert abs(literal - (n - 3) * pi(ctx256) ** 2 / (6 * n)) > 0.1


def test_annulus_first_examples(ctx256):
    mp = ctx256.mp
    L = 2 * mp.log(1 + mp.sqrt(2))
    assert abs(annulus_terms(L, 2, ctx256)[0].value - mp.mpf(1) / 8) < 2 ** -250
    L = 2 * mp.log(3 + 2 * mp.sqrt(2))
    assert abs(annulus_terms(L, 2, ctx256)[0].value - mp.mpf(1) / 36) < 2 ** -250


def test_annulus_dual_forms_random():
    ctx = PrecisionContext(192)
    mp = ctx.mp
    rng = random.Random(5)
    for _ in range(20):
        L = mp.mpf(rng.uniform(0.05, 8))
        k = rng.randint(2, 40)
        v = (mp.sinh(L / 2) / mp.sinh(k * L / 2)) ** 2
        cr, rel = annulus_cross_ratio_term(L, k, ctx)
        assert abs(v - cr) <= (rel + (8 + 2 * k * L) * ctx.unit) * v
    assert len(annulus_terms(mp.mpf(1), 30, ctx)) == 29


def test_annulus_boundary_relation():
    ctx = PrecisionContext(192)
    mp = ctx.mp
    rng = random.Random(11)
    for _ in range(10):
        L = mp.mpf(rng.uniform(0.01, 10))
        t = annulus_boundary_term(L, ctx)
        assert abs(t.value - (1 - mp.exp(-L))) <= 16 * ctx.unit
        # 1/cosh^2(l/2) for the boundary orthogeodesic lies in (0, 1]
        assert 0 < t.value <= 1


def test_annulus_domain(ctx128):
    with pytest.raises(DomainError):
        annulus_terms(0, 5, ctx128)
    with pytest.raises(DomainError):
        annulus_terms(1, 1, ctx128)
