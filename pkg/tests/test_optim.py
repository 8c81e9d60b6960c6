import math

import pytest
from hypothesis import given, strategies as st

from bmhull import analytic, optim, quad
from bmhull.optim import ScalarObjective, brent_minimize


def test_quadratic():
    x, fx = brent_minimize(ScalarObjective(lambda x: (x - 2) ** 2, 0.0, 10.0), tol=1e-8)
    assert x == pytest.approx(2.0, abs=1e-6) and fx == pytest.approx(0.0, abs=1e-12)


def test_half_line():
    x, fx = brent_minimize(ScalarObjective(lambda x: x + 1 / x, 0.0, math.inf), tol=1e-8)
    assert x == pytest.approx(1.0, abs=1e-6) and fx == pytest.approx(2.0, abs=1e-12)


@given(st.floats(0.5, 9.5), st.floats(0.1, 10))
def test_shifted_quartic(c, k):
    x, _ = brent_minimize(ScalarObjective(lambda x: k * (x - c) ** 4 + (x - c) ** 2, 0.0, 10.0), tol=1e-7)
    assert x == pytest.approx(c, abs=1e-5)


def test_monotone_objective_raises():
    with pytest.raises(ValueError, match="bracket"):
        brent_minimize(ScalarObjective(lambda x: x, 0.0, 1.0))


def test_empty_domain():
    with pytest.raises(ValueError):
        ScalarObjective(lambda x: x, 1.0, 1.0)


def test_inradius_bound():
    res = optim.inradius_upper_bound()
    assert res.bound == pytest.approx(83.40, abs=0.05)
    assert res.a_star == pytest.approx(9.79, abs=0.05)
    assert analytic.triangle_metrics("A", res.a_star, res.r_star).inradius == pytest.approx(1.0, abs=1e-9)


def test_objective_matches_closed_form_constant():
    # 8 Gamma(1/6) / (sqrt(pi) Gamma(2/3)) is 16 times the six-slit mean
    g = analytic.gamma_fn
    coeff = 8 * g(1 / 6) / (math.sqrt(math.pi) * g(2 / 3))
    c = quad.min_range_constant().value
    f = optim.inradius_objective().f
    for a in (4.5, 9.79, 20.0):
        leg = (a - (2 - math.sqrt(3))) / (a - 4)
        assert f(a) == pytest.approx(c * a * a + coeff * leg * leg, rel=1e-12)


@given(st.floats(4.0001, 1e4))
def test_constraint_identity(a):
    rho = analytic.triangle_metrics("A", a, optim.slit_leg(a)).inradius
    assert rho == pytest.approx(1.0, abs=1e-9)


def test_objective_blows_up_at_both_ends():
    f = optim.inradius_objective().f
    res = optim.inradius_upper_bound()
    assert f(4 + 1e-6) > 1e6 and f(1e4) > 1e6
    assert res.bound < f(res.a_star - 1) and res.bound < f(res.a_star + 1)


def test_printed_constant_barely_moves_bound():
    computed = optim.inradius_upper_bound().bound
    printed = optim.inradius_upper_bound(c_min=0.3466).bound
    assert abs(printed - computed) < 0.05
