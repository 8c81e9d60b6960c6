"""Slow, obviously-correct reference computations.

These back the self-test command and the test suite.  None of them is
meant for production use: the enclosing-circle oracle is O(n^4), the LP
oracle enumerates every vertex.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .geom import as_points


def extreme_points(points) -> np.ndarray:
    """Points that are strict vertices of the hull, by the O(n^3) triangle test.

    A point is dropped if it lies in a (closed) triangle of three other
    points or in the relative interior of a segment of two others.
    """
    p = np.unique(as_points(points), axis=0)
    n = len(p)
    if n <= 2:
        return p
    keep = []
    for i in range(n):
        x = p[i]
        others = np.delete(p, i, axis=0)
        inside = False
        # segment test
        for a, b in itertools.combinations(others, 2):
            ab = b - a
            ax = x - a
            cr = ab[0] * ax[1] - ab[1] * ax[0]
            scale = np.dot(ab, ab)
            if abs(cr) <= 1e-12 * scale:
                t = np.dot(ax, ab) / scale
                if 0.0 <= t <= 1.0:
                    inside = True
                    break
        if not inside:
            for a, b, c in itertools.combinations(others, 3):
                d1 = (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0])
                d2 = (c[0] - b[0]) * (x[1] - b[1]) - (c[1] - b[1]) * (x[0] - b[0])
                d3 = (a[0] - c[0]) * (x[1] - c[1]) - (a[1] - c[1]) * (x[0] - c[0])
                neg = d1 < 0 or d2 < 0 or d3 < 0
                pos = d1 > 0 or d2 > 0 or d3 > 0
                if not (neg and pos):
                    inside = True
                    break
        if not inside:
            keep.append(x)
    return np.array(keep).reshape(-1, 2)


def brute_diameter(v) -> float:
    v = as_points(v)
    if len(v) < 2:
        return 0.0
    d = v[:, None, :] - v[None, :, :]
    return float(np.sqrt((d ** 2).sum(-1).max()))


def brute_min_enclosing_radius(points) -> float:
    """Smallest radius among circles through 2 or 3 points that contain every point."""
    p = as_points(points)
    n = len(p)
    if n == 1:
        return 0.0
    best = math.inf
    i, j = np.triu_indices(n, 1)
    centers = 0.5 * (p[i] + p[j])
    radii = 0.5 * np.hypot(*(p[i] - p[j]).T)
    cand = [(centers, radii)]
    if n >= 3:
        idx = np.array(list(itertools.combinations(range(n), 3)))
        a, b, c = p[idx[:, 0]], p[idx[:, 1]], p[idx[:, 2]]
        bx, by = (b - a).T
        cx, cy = (c - a).T
        d = 2.0 * (bx * cy - by * cx)
        ok = np.abs(d) > 1e-12
        b2 = bx ** 2 + by ** 2
        c2 = cx ** 2 + cy ** 2
        ux = (cy * b2 - by * c2)[ok] / d[ok]
        uy = (bx * c2 - cx * b2)[ok] / d[ok]
        cand.append((a[ok] + np.column_stack([ux, uy]), np.hypot(ux, uy)))
    for centers, radii in cand:
        dist = np.sqrt(((p[None, :, :] - centers[:, None, :]) ** 2).sum(-1))
        covers = (dist <= radii[:, None] * (1 + 1e-10) + 1e-12).all(axis=1)
        if covers.any():
            best = min(best, float(radii[covers].min()))
    return best


def _edge_distance_min(v: np.ndarray, xy: np.ndarray) -> np.ndarray:
    """Signed distance from each point in ``xy`` to the nearest edge line (positive inside)."""
    a = v
    b = np.roll(v, -1, axis=0)
    e = b - a
    L = np.hypot(e[:, 0], e[:, 1])
    # inward normal for a CCW polygon
    nx, ny = -e[:, 1] / L, e[:, 0] / L
    d = (xy[:, None, 0] - a[None, :, 0]) * nx + (xy[:, None, 1] - a[None, :, 1]) * ny
    return d.min(axis=1)


def grid_inradius(v, n_grid: int = 41, tol: float = 1e-6, max_rounds: int = 200) -> float:
    """Maximize the distance to the boundary by grid refinement with a safe box.

    The distance to the nearest edge line is 1-Lipschitz, so the maximizer
    lies within one cell of some node whose value is at least
    ``best - cell diagonal / 2``.  Each round keeps the bounding box of
    those nodes (grown by one cell), which always contains the maximizer.
    Where the objective is flat the box stops shrinking; the grid is then
    made finer instead.
    """
    v = as_points(v)
    lo = v.min(axis=0)
    hi = v.max(axis=0)
    best = -math.inf
    n = n_grid
    for _ in range(max_rounds):
        gx = np.linspace(lo[0], hi[0], n)
        gy = np.linspace(lo[1], hi[1], n)
        X, Y = np.meshgrid(gx, gy)
        xy = np.column_stack([X.ravel(), Y.ravel()])
        d = _edge_distance_min(v, xy)
        best = max(best, float(d.max()))
        cell = (hi - lo) / (n - 1)
        diag = float(np.hypot(*cell))
        if diag < tol:
            break
        near = xy[d >= best - 0.5 * diag]
        new_lo = np.maximum(near.min(axis=0) - cell, lo)
        new_hi = np.minimum(near.max(axis=0) + cell, hi)
        if np.prod(new_hi - new_lo) > 0.5 * np.prod(hi - lo):
            n = min(2 * n - 1, 801)
        lo, hi = new_lo, new_hi
    return best


def winding_number(v, q) -> int:
    """Winding number of the closed polygon ``v`` around point ``q``."""
    v = as_points(v)
    w = 0
    for a, b in zip(v, np.roll(v, -1, axis=0)):
        cr = (b[0] - a[0]) * (q[1] - a[1]) - (q[0] - a[0]) * (b[1] - a[1])
        if a[1] <= q[1] < b[1] and cr > 0:
            w += 1
        elif b[1] <= q[1] < a[1] and cr < 0:
            w -= 1
    return w


def lp_vertex_enumeration(c, G, h, tol: float = 1e-9) -> float:
    """Best objective ``c.z`` over every feasible intersection of ``n`` constraint rows.

    Returns ``-inf`` if no vertex is feasible.
    """
    c = np.asarray(c, float)
    G = np.asarray(G, float)
    h = np.asarray(h, float)
    n = c.size
    best = -math.inf
    for rows in itertools.combinations(range(len(h)), n):
        A = G[list(rows)]
        if abs(np.linalg.det(A)) < 1e-12:
            continue
        z = np.linalg.solve(A, h[list(rows)])
        if np.all(G @ z <= h + tol * (1 + np.abs(h))):
            best = max(best, float(c @ z))
    return best


def cauchy_perimeter(v, n_angles: int = 10_000) -> float:
    """Perimeter as the integral of the width over half a turn (midpoint rule)."""
    v = as_points(v)
    th = (np.arange(n_angles) + 0.5) * math.pi / n_angles
    proj = v @ np.vstack([np.cos(th), np.sin(th)])
    width = proj.max(axis=0) - proj.min(axis=0)
    return float(width.sum() * math.pi / n_angles)


# --------------------------------------------------------------------------
# inequalities every planar convex hull satisfies


def hull_inequality_violations(P, A, D, R, r, R1=None, R2=None, slack: float = 1e-9) -> list[str]:
    """Names of the textbook hull inequalities that fail beyond ``slack``.

    ``R1`` and ``R2`` are the coordinate ranges of the point set; the range
    sandwich is skipped when they are not given.
    """
    def le(x, y):
        return x <= y + slack * max(1.0, abs(y))

    iso = max(P * P - 4.0 * math.pi * A, 0.0)
    checks = {
        "2D <= P": le(2 * D, P),
        "P <= pi D": le(P, math.pi * D),
        "4R <= P": le(4 * R, P),
        "P <= 2 pi R": le(P, 2 * math.pi * R),
        "pi r^2 <= A": le(math.pi * r * r, A),
        "D <= 2R": le(D, 2 * R),
        "r <= R": le(r, R),
        "4 pi A <= P^2": le(4 * math.pi * A, P * P),
        "Bonnesen inradius": le((P - math.sqrt(iso)) / (2 * math.pi), r),
        "Bonnesen circumradius": le(R, (P + math.sqrt(iso)) / (2 * math.pi)),
    }
    if R1 is not None and R2 is not None:
        checks["max(R1, R2) <= D"] = le(max(R1, R2), D)
        checks["D <= hypot(R1, R2)"] = le(D, math.hypot(R1, R2))
    return [name for name, ok in checks.items() if not ok]


# --------------------------------------------------------------------------
# exact means for the hull of a Gaussian random walk


def walk_mean_perimeter(n: int, dt: float) -> float:
    """Mean hull perimeter after ``n`` planar Gaussian steps of variance ``dt`` per coordinate.

    Spitzer and Widom: ``2 sum_k E|S_k| / k``, with ``E|S_k| = sqrt(pi k dt / 2)``.
    """
    k = np.arange(1, int(n) + 1, dtype=float)
    return float(2.0 * math.sqrt(0.5 * math.pi * dt) * np.sum(1.0 / np.sqrt(k)))


def walk_mean_area(n: int, dt: float) -> float:
    """Mean hull area for the same walk (Barndorff-Nielsen and Baxter).

    ``(1/2) sum_{i+j<=n} E|S_i x S'_j| / (i j)`` over independent partial
    sums; for Gaussian steps ``E|S_i x S'_j| = dt sqrt(i j)``.
    """
    n = int(n)
    if n < 2:
        return 0.0
    inv = 1.0 / np.sqrt(np.arange(1, n, dtype=float))
    c = np.cumsum(inv)                 # c[m-1] = sum_{j<=m} j^-1/2
    # pair i with every j <= n - i
    return float(0.5 * dt * np.dot(inv, c[::-1]))
