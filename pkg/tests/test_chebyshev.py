from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pelldilog.chebyshev import cheb_eval, cheb_hyperbolic_check, iter_chebyshev
from pelldilog.errors import DomainError
from pelldilog.numerics import PrecisionContext
from pelldilog.pell import PellSolution, fundamental_solution, unit_power


def test_values_at_one():
    for n in range(21):
        assert cheb_eval("U", n, 1) == n + 1
        assert cheb_eval("T", n, 1) == 1


def test_u2_three_halves():
    assert cheb_eval("U", 2, Fraction(3, 2)) == 8


def test_bad_kind_and_degree():
    with pytest.raises(DomainError):
        cheb_eval("V", 2, 1)
    with pytest.raises(DomainError):
        cheb_eval("T", -1, 1)


def test_recurrence_consistency():
    x = Fraction(7, 3)
    for kind in "TU":
        v = [cheb_eval(kind, n, x) for n in range(12)]
        for n in range(1, 11):
            assert v[n + 1] == 2 * x * v[n] - v[n - 1]


def test_hyperbolic_examples(ctx256):
    assert cheb_eval("T", 2, 3) == 17 == unit_power(PellSolution(3, 2, 2, 1), 2).a_k
    assert cheb_eval("U", 2, 2) == 15 == unit_power(PellSolution(2, 1, 3, 1), 3).b_k
    for x, k in ((3, 2), (2, 3), (Fraction(3, 2), 1), (Fraction(11, 7), 9)):
        r = cheb_hyperbolic_check(x, k, ctx256)
        assert r.t_residual <= r.bound and r.u_residual <= r.bound


def test_hyperbolic_domain(ctx128):
    with pytest.raises(DomainError):
        cheb_hyperbolic_check(1, 2, ctx128)
    with pytest.raises(DomainError):
        cheb_hyperbolic_check(2, 0, ctx128)


@pytest.mark.parametrize("n", [2, 3, 5, 7, 10, 13, 19, 61])
def test_pell_linkage(n):
    sol = fundamental_solution(n, allow_negative=False)
    a = int(sol.a)
    us = list(zip(range(20), iter_chebyshev("U", a)))
    for k in range(1, 21):
        assert us[k - 1][1] == unit_power(sol, k).b_k / sol.b


@given(st.floats(min_value=0.01, max_value=3.13), st.integers(0, 10))
def test_trig_identity(theta, n):
    ctx = PrecisionContext(128)
    mp = ctx.mp
    t = mp.mpf(theta)
    got = cheb_eval("U", n, mp.cos(t))
    ref = mp.sin((n + 1) * t) / mp.sin(t)
    assert abs(got - ref) <= 2 ** -100 * max(1, abs(ref)) * (n + 1) / abs(mp.sin(t))


@given(st.fractions(min_value=Fraction(101, 100), max_value=50, max_denominator=1000), st.integers(1, 30))
def test_hyperbolic_random(x, k):
    r = cheb_hyperbolic_check(x, k, PrecisionContext(128))
    assert r.t_residual <= r.bound and r.u_residual <= r.bound
