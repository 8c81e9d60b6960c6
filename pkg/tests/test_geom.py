import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from bmhull import geom, oracles
from bmhull import _kernels as K

coords = st.floats(-100, 100, allow_nan=False, allow_infinity=False)
point_sets = arrays(np.float64, st.tuples(st.integers(1, 40), st.just(2)), elements=coords)

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
TRIANGLE = [(0, 0), (3, 0), (0, 4)]


def test_single_point_hull():
    h = geom.convex_hull([(0.0, 0.0)])
    assert len(h) == 1 and h.is_degenerate


def test_interior_point_dropped():
    h = geom.convex_hull([(0, 0), (1, 0), (0, 1), (0.25, 0.25)])
    np.testing.assert_array_equal(h.vertices, [[0, 0], [1, 0], [0, 1]])


def test_collinear_points_dropped():
    h = geom.convex_hull([(0, 0), (1, 0), (2, 0), (2, 2), (1, 1)])
    assert len(h) == 3


def test_empty_input_rejected():
    with pytest.raises(ValueError):
        geom.convex_hull(np.zeros((0, 2)))
    with pytest.raises(ValueError):
        geom.min_enclosing_circle([])


def test_nonfinite_rejected():
    with pytest.raises(ValueError):
        geom.convex_hull([(0, 0), (np.nan, 1)])


def test_hull_matches_extreme_point_oracle():
    rng = np.random.default_rng(0)
    p = rng.standard_normal((100, 2))
    got = geom.convex_hull(p).vertices
    ref = oracles.extreme_points(p)
    assert sorted(map(tuple, got)) == sorted(map(tuple, ref))


@given(point_sets)
def test_hull_invariants(p):
    h = geom.convex_hull(p)
    v = h.vertices
    # every vertex is an input point
    assert all((np.abs(p - x).sum(axis=1) == 0).any() for x in v)
    # first vertex is the lexicographic minimum
    assert tuple(v[0]) == min(map(tuple, p))
    if len(v) >= 3:
        assert geom.area(h) > 0
        for i in range(len(v)):
            a, b, c = v[i], v[(i + 1) % len(v)], v[(i + 2) % len(v)]
            assert (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) > 0
        # all inputs inside or on the boundary
        hp = geom.to_halfplanes(h)
        scale = np.abs(p).max() + 1
        assert all(all(q.contains(x, tol=1e-9 * scale) for q in hp) for x in p)


@given(point_sets)
def test_hull_idempotent(p):
    h = geom.convex_hull(p)
    assert geom.convex_hull(h.vertices) == h


def test_perimeter_examples():
    assert geom.perimeter(geom.convex_hull(SQUARE)) == 4
    assert geom.perimeter(geom.convex_hull([(0, 0), (1, 0)])) == 2
    assert geom.perimeter(geom.convex_hull([(3, 3)])) == 0


def test_perimeter_matches_cauchy_formula():
    rng = np.random.default_rng(1)
    for _ in range(5):
        h = geom.convex_hull(np.cumsum(rng.standard_normal((300, 2)), axis=0))
        assert geom.perimeter(h) == pytest.approx(oracles.cauchy_perimeter(h.vertices), rel=1e-3)


def test_area_examples():
    assert geom.area(geom.convex_hull(SQUARE)) == 1
    assert geom.area(geom.convex_hull(TRIANGLE)) == 6
    assert geom.area(geom.convex_hull([(0, 0), (2, 2)])) == 0


def test_area_matches_rejection_sampling():
    rng = np.random.default_rng(2)
    h = geom.convex_hull(rng.standard_normal((30, 2)))
    lo, hi = h.vertices.min(axis=0), h.vertices.max(axis=0)
    n = 200_000
    q = lo + (hi - lo) * rng.random((n, 2))
    hp = geom.to_halfplanes(h)
    inside = np.ones(n, dtype=bool)
    for c in hp:
        inside &= q @ np.array(c.normal) <= c.offset
    box = np.prod(hi - lo)
    est = box * inside.mean()
    se = box * math.sqrt(inside.mean() * (1 - inside.mean()) / n)
    assert abs(est - geom.area(h)) < 3 * se


def test_diameter_examples():
    assert geom.diameter(geom.convex_hull(SQUARE)) == pytest.approx(math.sqrt(2))
    assert geom.diameter(geom.convex_hull([(5, 5)])) == 0


@given(point_sets)
def test_diameter_matches_all_pairs(p):
    h = geom.convex_hull(p)
    assert geom.diameter(h) == oracles.brute_diameter(h.vertices)


def test_enclosing_circle_examples():
    c = geom.min_enclosing_circle([(0, 0), (2, 0)])
    assert c.center == (1, 0) and c.radius == 1
    assert geom.min_enclosing_circle([(0, 0)]).radius == 0


def test_enclosing_circle_matches_brute_force():
    rng = np.random.default_rng(3)
    for _ in range(20):
        p = rng.standard_normal((50, 2))
        r = geom.min_enclosing_circle(p).radius
        assert r == pytest.approx(oracles.brute_min_enclosing_radius(p), rel=1e-9)


@given(point_sets)
def test_enclosing_circle_contains_points(p):
    c = geom.min_enclosing_circle(p)
    d = np.hypot(p[:, 0] - c.center.x, p[:, 1] - c.center.y)
    assert (d <= c.radius * (1 + 1e-9) + 1e-9).all()


def test_halfplanes_examples():
    hp = geom.to_halfplanes(geom.convex_hull(SQUARE))
    assert len(hp) == 4
    assert all(h.contains((0.5, 0.5)) for h in hp)
    hp = geom.to_halfplanes(geom.convex_hull(TRIANGLE))
    assert len(hp) == 3
    assert not all(h.contains((2.9, 3.9)) for h in hp)
    with pytest.raises(ValueError):
        geom.to_halfplanes(geom.convex_hull([(0, 0), (1, 1)]))


def test_halfplanes_agree_with_winding_number():
    rng = np.random.default_rng(4)
    h = geom.convex_hull(rng.standard_normal((40, 2)))
    hp = geom.to_halfplanes(h)
    for q in rng.uniform(-3, 3, (1000, 2)):
        inside = all(c.contains(q) for c in hp)
        assert inside == (oracles.winding_number(h.vertices, q) == 1)


def test_chebyshev_examples():
    c = geom.chebyshev_center(geom.convex_hull(SQUARE))
    assert c.radius == pytest.approx(0.5) and c.center == pytest.approx((0.5, 0.5))
    c = geom.chebyshev_center(geom.convex_hull(TRIANGLE))
    assert c.radius == pytest.approx(1.0) and c.center == pytest.approx((1.0, 1.0))


def test_chebyshev_rejects_degenerate():
    with pytest.raises(ValueError):
        geom.chebyshev_center(geom.convex_hull([(0, 0), (1, 1), (2, 2)]))
    assert geom.inradius(geom.convex_hull([(0, 0), (1, 1)])) == 0


def test_chebyshev_matches_grid_oracle():
    rng = np.random.default_rng(5)
    for _ in range(10):
        h = geom.convex_hull(rng.standard_normal((25, 2)))
        assert geom.inradius(h) == pytest.approx(oracles.grid_inradius(h.vertices), abs=1e-4)


def test_chebyshev_center_is_feasible():
    rng = np.random.default_rng(6)
    h = geom.convex_hull(rng.standard_normal((25, 2)))
    c = geom.chebyshev_center(h)
    for hp in geom.to_halfplanes(h):
        dist = hp.offset - (hp.normal.x * c.center.x + hp.normal.y * c.center.y)
        assert dist >= c.radius - 1e-9


def test_long_rectangle_radius_unique():
    # the centre is not unique here, the radius is
    h = geom.convex_hull([(0, 0), (10, 0), (10, 1), (0, 1)])
    assert geom.inradius(h) == pytest.approx(0.5)


@given(arrays(np.float64, st.tuples(st.integers(3, 40), st.just(2)),
              elements=st.floats(-10, 10, allow_nan=False)))
def test_geometric_inequalities(p):
    h = geom.convex_hull(p)
    if len(h) < 3 or geom.area(h) < 1e-6:
        return
    P, A, D = geom.perimeter(h), geom.area(h), geom.diameter(h)
    R, r = geom.circumradius(h), geom.inradius(h)
    r1, r2 = np.ptp(p, axis=0)
    assert oracles.hull_inequality_violations(P, A, D, R, r, r1, r2, slack=1e-8) == []


def test_incremental_insertion_matches_batch():
    rng = np.random.default_rng(7)
    for _ in range(10):
        p = np.vstack([[0, 0], np.cumsum(rng.standard_normal((3000, 2)), axis=0)])
        buf = np.zeros((4096, 2))
        tmp = np.zeros_like(buf)
        n = 1
        for x, y in p[1:]:
            n = K.insert_point(buf, n, x, y, tmp)
        ref = K.monotone_chain(p)
        assert sorted(map(tuple, buf[:n])) == sorted(map(tuple, ref))
