import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bmhull import analytic, geom, oracles, sim
from bmhull.sim import FunctionalKind as FK, PathConfig

SMALL = PathConfig(n_steps=200, horizon=3.0, master_seed=11, n_paths=50)


def test_config_validation():
    with pytest.raises(ValueError):
        PathConfig(n_steps=0)
    with pytest.raises(ValueError):
        PathConfig(horizon=math.inf)
    with pytest.raises(ValueError):
        PathConfig(n_paths=0)
    assert PathConfig(n_steps=100, horizon=2.5).total_steps == 250


def test_path_is_deterministic_and_starts_at_origin():
    a = sim.generate_path(SMALL, 3)
    b = sim.generate_path(SMALL, 3)
    np.testing.assert_array_equal(a, b)
    assert (a[0] == 0).all()
    assert a.shape == (SMALL.total_steps + 1, 2)
    assert not np.array_equal(a, sim.generate_path(SMALL, 4))
    other_seed = PathConfig(n_steps=200, horizon=3.0, master_seed=12)
    assert not np.array_equal(a, sim.generate_path(other_seed, 3))


def test_prefix_does_not_depend_on_horizon():
    long = PathConfig(n_steps=200, horizon=30.0, master_seed=11)
    np.testing.assert_array_equal(sim.generate_path(SMALL, 0),
                                  sim.generate_path(long, 0)[:SMALL.total_steps + 1])


def test_increments_are_standard_gaussian_scaled():
    cfg = PathConfig(n_steps=400, horizon=50.0, master_seed=1)
    inc = np.diff(sim.generate_path(cfg, 0), axis=0) * math.sqrt(cfg.n_steps)
    assert abs(inc.mean()) < 4 / math.sqrt(inc.size)
    assert inc.var() == pytest.approx(1.0, abs=0.02)
    assert abs(np.corrcoef(inc[:, 0], inc[:, 1])[0, 1]) < 0.02


def test_scanner_matches_batch_hull_at_one():
    for i in range(5):
        w = sim.generate_path(SMALL, i)[:SMALL.n_steps + 1]
        ref = sim.hull_functionals(w)
        got = sim.hull_functionals_at_one(SMALL, i)
        np.testing.assert_allclose(got.as_tuple(), ref.as_tuple(), rtol=1e-10)


def _brute_hitting_step(w, kind, level):
    x_lo = x_hi = y_lo = y_hi = 0.0
    for k in range(1, len(w)):
        x_lo, x_hi = min(x_lo, w[k, 0]), max(x_hi, w[k, 0])
        y_lo, y_hi = min(y_lo, w[k, 1]), max(y_hi, w[k, 1])
        if kind is FK.RANGE_MIN:
            # the earlier of the two coordinate range times
            f = max(x_hi - x_lo, y_hi - y_lo)
        elif kind is FK.RANGE_X:
            f = x_hi - x_lo
        elif kind is FK.RANGE_Y:
            f = y_hi - y_lo
        else:
            f = sim.hull_functionals(w[:k + 1]).as_tuple()[kind.value]
        if f > level:
            return k
    return -1


@pytest.mark.parametrize("kind,level", [
    (FK.PERIMETER, 4.0), (FK.AREA, 0.8), (FK.DIAMETER, 1.5),
    (FK.CIRCUMRADIUS, 0.8), (FK.INRADIUS, 0.3), (FK.RANGE_MIN, 0.9),
    (FK.RANGE_X, 1.0), (FK.RANGE_Y, 1.0),
])
def test_hitting_time_matches_brute_force(kind, level):
    cfg = PathConfig(n_steps=100, horizon=3.0, master_seed=5)
    for i in range(6):
        w = sim.generate_path(cfg, i)
        k = _brute_hitting_step(w, kind, level)
        got = sim.hitting_time(cfg, i, kind, level)
        if k < 0:
            assert got.censored and got.time == pytest.approx(cfg.horizon)
        else:
            assert not got.censored
            assert got.time == pytest.approx(k * cfg.dt)


def test_joint_scan_equals_separate_scans():
    levels = {FK.PERIMETER: 3.0, FK.AREA: 0.4, FK.INRADIUS: 0.2, FK.RANGE_MIN: 0.7}
    for i in range(5):
        joint = sim.hitting_times(SMALL, i, levels)
        for kind, y in levels.items():
            assert joint[kind] == sim.hitting_time(SMALL, i, kind, y)


def test_hitting_time_monotone_in_level():
    for i in range(5):
        times = [sim.hitting_time(SMALL, i, FK.AREA, y).time for y in (0.1, 0.2, 0.4, 0.8)]
        assert times == sorted(times)


def test_diameter_hits_no_later_than_min_range():
    # D >= max(R1, R2) >= min(R1, R2)
    for i in range(10):
        d = sim.hitting_time(SMALL, i, FK.DIAMETER, 1.0).time
        m = sim.min_inverse_range_sample(SMALL, i, 1.0).time
        assert d <= m


def test_level_must_be_positive():
    with pytest.raises(ValueError):
        sim.hitting_time(SMALL, 0, FK.AREA, 0.0)


def test_path_state_extend_matches_batch():
    w = sim.generate_path(SMALL, 2)
    st_ = sim.PathState(dt=SMALL.dt)
    for chunk in np.array_split(w[1:], 7):
        st_.extend(chunk)
    assert st_.step == SMALL.total_steps
    assert st_.time == pytest.approx(SMALL.horizon)
    assert st_.hull == geom.convex_hull(w)
    np.testing.assert_array_equal(st_.coord_max, w.max(axis=0))
    np.testing.assert_array_equal(st_.coord_min, w.min(axis=0))


def test_discrete_walk_means_match_exact_formulas():
    cfg = PathConfig(n_steps=20, horizon=1.0, master_seed=3, n_paths=20_000)
    vals = np.array([sim.hull_functionals(sim.generate_path(cfg, i)).as_tuple()[:2]
                     for i in range(cfg.n_paths)])
    for col, exact in ((0, oracles.walk_mean_perimeter(20, cfg.dt)), (1, oracles.walk_mean_area(20, cfg.dt))):
        ci = sim.summarize(vals[:, col])
        assert ci.contains(exact, 4.0), (col, ci, exact)


def test_walk_area_formula_against_double_sum():
    n = 60
    ref = 0.5 * sum(1 / math.sqrt(i * j) for i in range(1, n) for j in range(1, n - i + 1))
    assert oracles.walk_mean_area(n, 1.0) == pytest.approx(ref, rel=1e-13)


def test_discrete_means_approach_continuum():
    assert oracles.walk_mean_perimeter(2000, 1 / 2000) == pytest.approx(analytic.exact_mean_perimeter(), rel=0.02)
    assert oracles.walk_mean_area(2000, 1 / 2000) < analytic.exact_mean_area()


@given(st.tuples(st.floats(-5, 5), st.floats(-5, 5)),
       st.tuples(st.floats(-5, 5), st.floats(-5, 5)))
def test_chord_inradius_matches_polygon_inradius(b, c):
    r = sim.triangle_chord_inradius((0, 0), b, c)
    poly = geom.convex_hull([(0, 0), b, c])
    if len(poly) == 3 and geom.area(poly) > 1e-6:
        assert r == pytest.approx(geom.inradius(poly), rel=1e-7, abs=1e-12)
    else:
        assert r == pytest.approx(0.0, abs=1e-6)


def test_chord_never_exceeds_hull_inradius():
    cfg = PathConfig(n_steps=200, horizon=1.0, master_seed=8, n_paths=30)
    rec = sim.simulate_records(cfg, levels={})
    assert (rec["chord"] <= rec["r"] + 1e-12).all()
    for i in range(5):
        assert rec["chord"][i] == pytest.approx(sim.triangle_chord_sample(cfg, i))


def test_records_and_estimates_independent_of_threads():
    cfg = PathConfig(n_steps=100, horizon=5.0, master_seed=9, n_paths=37)
    levels = {FK.AREA: 0.5, FK.INRADIUS: 0.2}
    a = sim.simulate_records(cfg, threads=1, levels=levels)
    b = sim.simulate_records(cfg, threads=3, levels=levels)
    for f in ("P", "A", "r", "theta_A", "theta_r"):
        np.testing.assert_array_equal(a[f], b[f])
    e1 = sim.estimate(cfg, sim.triangle_chord_sample, threads=1)
    e3 = sim.estimate(cfg, sim.triangle_chord_sample, threads=4)
    assert e1 == e3


def test_records_rescale_hitting_times():
    cfg = PathConfig(n_steps=100, horizon=5.0, master_seed=9, n_paths=5)
    rec = sim.simulate_records(cfg, levels={FK.AREA: 0.5, FK.DIAMETER: 0.5})
    for i in range(5):
        assert rec["theta_A"][i] == pytest.approx(sim.hitting_time(cfg, i, FK.AREA, 0.5).time / 0.5)
        assert rec["theta_D"][i] == pytest.approx(sim.hitting_time(cfg, i, FK.DIAMETER, 0.5).time / 0.25)
    assert np.isnan(rec["theta_P"]).all()


def test_summarize_edge_cases():
    ci = sim.summarize([2.0] * 10)
    assert ci.mean == 2.0 and ci.std_error == 0.0
    with pytest.raises(ValueError):
        sim.summarize([1.0])
    with pytest.raises(ValueError):
        sim.summarize([1.0, 1.0], [True, True])
    assert sim.summarize([1.0, 3.0], [True, False]).censored_fraction == 0.5


def test_censoring_reported():
    cfg = PathConfig(n_steps=50, horizon=1.0, master_seed=1, n_paths=20)
    with pytest.raises(sim.AllCensoredError):
        sim.estimate(cfg, lambda c, i: sim.hitting_time(c, i, FK.AREA, 50.0))
    ci = sim.estimate(cfg, lambda c, i: sim.hitting_time(c, i, FK.AREA, 1.5))
    flags = [sim.hitting_time(cfg, i, FK.AREA, 1.5).censored for i in range(20)]
    assert ci.censored_fraction == sum(flags) / 20
    assert 0 < ci.censored_fraction < 1


def test_slit_exit_mean_eight_slits():
    cfg = PathConfig(n_steps=10_000, horizon=1e4, master_seed=2, n_paths=1500)
    ci = sim.estimate(cfg, lambda c, i: sim.slit_exit_sample(c, i, n_slits=8))
    assert ci.censored_fraction == 0.0
    assert ci.contains(analytic.slit_exit_mean(8), 4.0)


def test_slit_exit_scales_with_radius():
    cfg = PathConfig(n_steps=10_000, horizon=1e4, master_seed=4, n_paths=1500)
    ci = sim.estimate(cfg, lambda c, i: sim.slit_exit_sample(c, i, n_slits=8, slit_radius=2.0))
    assert ci.contains(4 * analytic.slit_exit_mean(8), 4.0)
