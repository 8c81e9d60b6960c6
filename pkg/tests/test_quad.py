import math
import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from bmhull import analytic, quad


def test_polynomial():
    assert quad.adaptive_quad(lambda x: x * x, 0.0, 1.0, 1e-13).value == pytest.approx(1 / 3, abs=1e-12)


def test_exponential_tail():
    assert quad.adaptive_quad(lambda t: math.exp(-t), 0.0, math.inf).value == pytest.approx(1.0, abs=1e-10)


def test_sqrt_sine_closed_form():
    ref = 2 * math.sqrt(2 / math.pi) * math.gamma(0.75) ** 2
    assert ref == pytest.approx(2.39628, abs=1e-5)
    got = quad.adaptive_quad(lambda u: math.sqrt(math.sin(u)), 0.0, math.pi, 1e-12)
    assert got.value == pytest.approx(ref, abs=1e-10)


def test_both_ends_infinite_and_reversed():
    r = quad.adaptive_quad(lambda x: math.exp(-x * x), -math.inf, math.inf, 1e-12)
    assert r.value == pytest.approx(math.sqrt(math.pi), abs=1e-10)
    r = quad.adaptive_quad(lambda x: x, 1.0, 0.0)
    assert r.value == pytest.approx(-0.5)
    assert quad.adaptive_quad(math.exp, 2.0, 2.0).value == 0.0


def test_endpoint_singularity_not_evaluated():
    r = quad.adaptive_quad(lambda x: 1 / math.sqrt(x), 0.0, 1.0, 1e-9)
    assert r.value == pytest.approx(2.0, abs=1e-8)


def test_vectorized_matches_scalar():
    a = quad.adaptive_quad(np.cos, 0.0, 3.0, 1e-12, vectorized=True)
    b = quad.adaptive_quad(math.cos, 0.0, 3.0, 1e-12)
    assert a.value == pytest.approx(b.value, abs=1e-13)
    assert a.value == pytest.approx(math.sin(3.0), abs=1e-12)


def test_limit_is_flagged():
    with pytest.warns(quad.QuadratureWarning):
        r = quad.adaptive_quad(lambda x: math.sin(1 / x), 0.0, 1.0, 1e-14, limit=20)
    assert not r.converged


def test_bad_arguments():
    with pytest.raises(ValueError):
        quad.adaptive_quad(math.exp, 0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        quad.adaptive_quad(math.exp, math.nan, 1.0)


SUITE = [
    (lambda x: x * x, 0.0, 1.0),
    (lambda t: math.exp(-t), 0.0, math.inf),
    (lambda u: math.sqrt(math.sin(u)), 0.0, math.pi),
    (lambda x: math.log(x), 0.0, 1.0),
    (lambda x: 1.0 / (1.0 + x * x), 0.0, math.inf),
    (analytic.theta_density, 0.0, math.inf),
    (quad.min_range_integrand, 0.0, math.inf),
]


@pytest.mark.parametrize("case", range(len(SUITE)))
def test_error_estimate_bounds_true_error_after_tightening(case):
    f, a, b = SUITE[case]
    coarse = quad.adaptive_quad(f, a, b, 1e-6)
    fine = quad.adaptive_quad(f, a, b, 1e-7)
    assert abs(fine.value - coarse.value) <= coarse.abs_error_estimate + 1e-15


@given(st.floats(0.05, 2.95))
def test_interval_additivity(c):
    f = lambda x: math.exp(-x) * math.cos(3 * x)
    left = quad.adaptive_quad(f, 0.0, c, 1e-11)
    right = quad.adaptive_quad(f, c, 3.0, 1e-11)
    whole = quad.adaptive_quad(f, 0.0, 3.0, 1e-11)
    err = left.abs_error_estimate + right.abs_error_estimate + whole.abs_error_estimate
    assert abs(left.value + right.value - whole.value) <= err + 1e-14


def test_min_range_constant():
    r = quad.min_range_constant()
    assert r.value == pytest.approx(0.346554, abs=1e-6)
    assert r.abs_error_estimate <= 1e-8
    assert (0.5 - r.value) * math.pi / 2 == pytest.approx(0.241032, abs=1e-6)


def test_min_range_constant_against_mpmath():
    mp.mp.dps = 30
    g = lambda t: (1 - 4 / (mp.cos(t) + mp.cosh(t)) ** 2) / t ** 3
    ref = float(mp.mpf(1) / 2 - 2 / mp.pi * mp.quad(g, [0, 1, 10, mp.inf]))
    mp.mp.dps = 15
    assert quad.min_range_constant().value == pytest.approx(ref, abs=1e-10)


@pytest.mark.parametrize("t", [1e-3, 0.01, 0.049, 0.2])
def test_lemma_series_against_extended_precision(t):
    mp.mp.dps = 50
    ref = float((1 - 4 / (mp.cos(t) + mp.cosh(t)) ** 2) / mp.mpf(t) ** 3)
    mp.mp.dps = 15
    assert quad._lemma_series(t) == pytest.approx(ref, rel=1e-12)


def test_lemma_branches_agree_at_crossover_check_point():
    assert quad._lemma_series(0.2) == pytest.approx(quad._lemma_direct(0.2), abs=1e-10)


def test_lemma_integrand_small_t_behaviour():
    # t / 12 to leading order
    assert quad.min_range_integrand(1e-4) == pytest.approx(1e-4 / 12, rel=1e-6)
    assert quad.min_range_integrand(0.0) == 0.0


def test_second_moment():
    r = quad.perimeter_second_moment()
    assert r.value == pytest.approx(26.209056, abs=1e-4)
    assert 8 * math.pi < r.value
    assert r.abs_error_estimate < 1e-4


def test_second_moment_against_mpmath_naive_form():
    f = lambda th, u: (mp.cos(th) * mp.cosh(u * th) / mp.sinh(u * mp.pi / 2)
                       * mp.tanh((2 * th + mp.pi) * u / 4))
    ref = float(4 * mp.pi * mp.quad(f, [-mp.pi / 2, 0, mp.pi / 2], [0, 1, 10, mp.inf]))
    assert quad.perimeter_second_moment().value == pytest.approx(ref, abs=1e-6)


def test_rewritten_integrand_matches_naive():
    naive = quad.p2_integrand_naive(0.3, 1.0)
    assert math.cos(0.3) * float(quad.p2_integrand(0.3, 1.0)) == pytest.approx(naive, abs=1e-10)


@given(st.floats(-1.5, 1.5), st.floats(1e-3, 30))
def test_rewritten_integrand_matches_naive_everywhere(theta, u):
    naive = float(quad.p2_integrand_naive(theta, u))
    assert math.cos(theta) * float(quad.p2_integrand(theta, u)) == pytest.approx(naive, rel=1e-9, abs=1e-300)


def test_second_factor_limit():
    assert float(quad.p2_second_factor(0.0, 1e-12)) == pytest.approx(0.5, rel=1e-10)
    assert float(quad.p2_second_factor(0.7, 0.0)) == pytest.approx(0.5 + 0.7 / math.pi)
    assert float(quad.p2_second_factor(0.7, 1e-6)) == pytest.approx(0.5 + 0.7 / math.pi, rel=1e-5)


def test_large_u_does_not_overflow():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        v = quad.p2_integrand(1.5, np.array([1e3, 1e5]))
    assert np.isfinite(v).all()
