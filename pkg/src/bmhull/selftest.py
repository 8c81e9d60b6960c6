"""Oracle checks behind ``bmhull selftest``.

Each check returns ``(passed, detail)``.  The suite is small enough to
finish in well under a minute and touches every module.
"""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from . import analytic, geom, linprog, oracles, optim, quad, sim


def _gamma_reference() -> tuple[bool, str]:
    xs = np.linspace(0.05, 30.0, 600)
    worst = max(abs(analytic.gamma_fn(x) / math.gamma(x) - 1.0) for x in xs)
    return worst < 1e-12, f"max rel err vs math.gamma {worst:.2e}"


def _gamma_identities() -> tuple[bool, str]:
    errs = [abs(analytic.gamma_fn(0.5) - math.sqrt(math.pi)) / math.sqrt(math.pi),
            abs(analytic.gamma_fn(5.0) - 24.0) / 24.0]
    for z in (1 / 6, 1 / 4, 1 / 3):
        lhs = analytic.gamma_fn(z) * analytic.gamma_fn(z + 0.5)
        rhs = 2.0 ** (1 - 2 * z) * math.sqrt(math.pi) * analytic.gamma_fn(2 * z)
        errs.append(abs(lhs / rhs - 1.0))
    return max(errs) < 1e-10, f"max rel err {max(errs):.2e}"


def _hull(rng) -> tuple[bool, str]:
    for _ in range(20):
        p = rng.standard_normal((40, 2))
        got = geom.convex_hull(p).vertices
        ref = oracles.extreme_points(p)
        if {tuple(np.round(x, 12)) for x in got} != {tuple(np.round(x, 12)) for x in ref}:
            return False, "hull differs from extreme-point test"
    return True, "20 sets of 40 points"


def _welzl(rng) -> tuple[bool, str]:
    worst = 0.0
    for _ in range(40):
        p = rng.standard_normal((20, 2))
        r = geom.min_enclosing_circle(p).radius
        worst = max(worst, abs(r / oracles.brute_min_enclosing_radius(p) - 1.0))
    return worst < 1e-9, f"max rel err {worst:.2e}"


def _calipers(rng) -> tuple[bool, str]:
    for _ in range(50):
        poly = geom.convex_hull(rng.standard_normal((60, 2)))
        if geom.diameter(poly) != oracles.brute_diameter(poly.vertices):
            return False, "calipers differ from all-pairs maximum"
    return True, "50 hulls, exact agreement"


def _lp(rng) -> tuple[bool, str]:
    worst = 0.0
    for _ in range(30):
        G = rng.standard_normal((12, 3))
        h = rng.uniform(0.5, 2.0, 12)
        # a box keeps the region bounded
        G = np.vstack([G, np.eye(3), -np.eye(3)])
        h = np.concatenate([h, np.full(6, 5.0)])
        c = rng.standard_normal(3)
        sol = linprog.solve(linprog.LinearProgram(c, G, h))
        ref = oracles.lp_vertex_enumeration(c, G, h)
        if not sol.optimal:
            return False, f"status {sol.status.value}"
        worst = max(worst, abs(sol.objective_value - ref))
    return worst < 1e-8, f"max abs err {worst:.2e}"


def _chebyshev(rng) -> tuple[bool, str]:
    sq = geom.chebyshev_center(geom.convex_hull([(0, 0), (1, 0), (1, 1), (0, 1)]))
    tri = geom.chebyshev_center(geom.convex_hull([(0, 0), (3, 0), (0, 4)]))
    if abs(sq.radius - 0.5) > 1e-12 or abs(tri.radius - 1.0) > 1e-12:
        return False, "square or 3-4-5 triangle"
    worst = 0.0
    for _ in range(10):
        poly = geom.convex_hull(rng.standard_normal((30, 2)))
        worst = max(worst, abs(geom.inradius(poly) - oracles.grid_inradius(poly.vertices)))
    return worst < 1e-4, f"max abs err vs grid {worst:.2e}"


def _quadrature() -> tuple[bool, str]:
    errs = [
        abs(quad.adaptive_quad(lambda x: x * x, 0.0, 1.0, 1e-13).value - 1 / 3),
        abs(quad.adaptive_quad(lambda t: math.exp(-t), 0.0, math.inf, 1e-12).value - 1.0),
        abs(quad.adaptive_quad(lambda u: math.sqrt(math.sin(u)), 0.0, math.pi, 1e-12).value
            - 2 * math.sqrt(2 / math.pi) * analytic.gamma_fn(0.75) ** 2),
    ]
    return max(errs) < 1e-10, f"max abs err {max(errs):.2e}"


def _min_range() -> tuple[bool, str]:
    c = quad.min_range_constant().value
    # independent route: E[min] = int P(T > t)^2 dt, with P(T > t) from the density
    surv = lambda t: quad.adaptive_quad(analytic.theta_density, t, math.inf, 1e-13).value
    alt = quad.adaptive_quad(lambda t: surv(t) ** 2, 0.0, 12.0, 1e-11).value
    return abs(c - alt) < 1e-8, f"{c:.10f} vs survival integral {alt:.10f}"


def _second_moment() -> tuple[bool, str]:
    r = quad.perimeter_second_moment()
    naive = float(quad.p2_integrand_naive(0.3, 1.0))
    rewritten = math.cos(0.3) * float(quad.p2_integrand(0.3, 1.0))
    ok = 8 * math.pi < r.value < 27.0 and abs(naive - rewritten) < 1e-10
    return ok, f"E[P^2] = {r.value:.8f}"


def _densities() -> tuple[bool, str]:
    one = quad.adaptive_quad(analytic.theta_density, 0.0, math.inf, 1e-12).value
    mean = quad.adaptive_quad(lambda t: t * analytic.theta_density(t), 0.0, math.inf, 1e-12).value
    lap = quad.adaptive_quad(lambda t: math.exp(-t) * analytic.theta_density(t),
                             0.0, math.inf, 1e-12).value
    rm = quad.adaptive_quad(lambda x: x * analytic.range_density(x), 0.0, math.inf, 1e-12).value
    errs = [abs(one - 1), abs(mean - 0.5), abs(lap - analytic.theta_laplace(1.0)),
            abs(rm - math.sqrt(8 / math.pi))]
    return max(errs) < 1e-8, f"max err {max(errs):.2e}"


def _slit_means() -> tuple[bool, str]:
    vals = [analytic.slit_exit_mean(n) for n in range(5, 60)]
    far = analytic.slit_exit_mean(10 ** 6)
    dec = all(a > b for a, b in zip(vals, vals[1:]))
    ok = dec and math.isinf(analytic.slit_exit_mean(4)) and 0.5 < vals[-1] < vals[0] and abs(far - 0.5) < 1e-5
    return ok, f"n=6: {vals[1]:.6f}"


def _optimizer() -> tuple[bool, str]:
    res = optim.inradius_upper_bound()
    rho = analytic.triangle_metrics("A", res.a_star, res.r_star).inradius
    ok = abs(rho - 1.0) < 1e-9 and 83.0 < res.bound < 84.0
    return ok, f"bound {res.bound:.4f} at a = {res.a_star:.4f}"


def _bounds_order() -> tuple[bool, str]:
    rows = analytic.bounds_table()
    ok = len(rows) == 7 and all(r.lower <= r.upper for r in rows)
    return ok, "7 rows, lower <= upper"


def _path_audit(seed: int) -> tuple[bool, str]:
    cfg = sim.PathConfig(n_steps=200, horizon=1.0, master_seed=seed, n_paths=1000)
    bad = 0
    for i in range(cfg.n_paths):
        w = sim.generate_path(cfg, i)
        hf = sim.hull_functionals(w)
        r1, r2 = np.ptp(w, axis=0)
        if oracles.hull_inequality_violations(*hf.as_tuple(), R1=r1, R2=r2):
            bad += 1
    return bad == 0, f"{bad} of {cfg.n_paths} hulls violate an inequality"


def run_checks(seed: int = 42) -> list[tuple[str, bool, str]]:
    rng = np.random.default_rng(seed)
    checks: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
        ("gamma vs reference", _gamma_reference),
        ("gamma identities", _gamma_identities),
        ("hull vs extreme points", lambda: _hull(rng)),
        ("Welzl vs brute force", lambda: _welzl(rng)),
        ("calipers vs all pairs", lambda: _calipers(rng)),
        ("simplex vs vertex enumeration", lambda: _lp(rng)),
        ("Chebyshev LP vs grid", lambda: _chebyshev(rng)),
        ("quadrature identities", _quadrature),
        ("min range constant", _min_range),
        ("perimeter second moment", _second_moment),
        ("range and theta densities", _densities),
        ("slit exit means", _slit_means),
        ("inradius optimizer", _optimizer),
        ("bounds ordering", _bounds_order),
        ("path inequality audit", lambda: _path_audit(seed)),
    ]
    out = []
    for name, fn in checks:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))
    return out
