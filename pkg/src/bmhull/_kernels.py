"""Compiled planar-geometry and LP kernels.

Everything here works on plain float64 arrays of shape (n, 2) so that the
simulation loop can call it without touching Python objects.  The public,
typed API lives in :mod:`bmhull.geom` and :mod:`bmhull.linprog`.
"""
import numpy as np
from numba import njit

PIVOT_TOL = 1e-11
FEAS_TOL = 1e-9

LP_OPTIMAL = 0
LP_INFEASIBLE = 1
LP_UNBOUNDED = 2


@njit(cache=True, nogil=True)
def _cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


@njit(cache=True, nogil=True)
def _bbox_scale(pts):
    xmin = pts[0, 0]
    xmax = pts[0, 0]
    ymin = pts[0, 1]
    ymax = pts[0, 1]
    for i in range(1, pts.shape[0]):
        x = pts[i, 0]
        y = pts[i, 1]
        if x < xmin:
            xmin = x
        elif x > xmax:
            xmax = x
        if y < ymin:
            ymin = y
        elif y > ymax:
            ymax = y
    return max(xmax - xmin, ymax - ymin)


@njit(cache=True, nogil=True)
def monotone_chain(pts):
    """Strictly convex CCW hull, first vertex the lexicographic minimum."""
    n = pts.shape[0]
    if n == 0:
        return np.empty((0, 2))
    order = np.argsort(pts[:, 1], kind="mergesort")
    order = order[np.argsort(pts[order, 0], kind="mergesort")]
    p = pts[order]
    if _bbox_scale(p) == 0.0:
        return p[:1].copy()
    # exact signs: a scaled tolerance on the cross product can discard a
    # vertex that is far from the hull when its neighbours are very close

    out = np.empty((2 * n + 1, 2))
    k = 0
    for i in range(n):
        while k >= 2 and _cross(out[k - 2, 0], out[k - 2, 1], out[k - 1, 0],
                                out[k - 1, 1], p[i, 0], p[i, 1]) <= 0.0:
            k -= 1
        out[k, 0] = p[i, 0]
        out[k, 1] = p[i, 1]
        k += 1
    lower_end = k + 1
    for i in range(n - 2, -1, -1):
        while k >= lower_end and _cross(out[k - 2, 0], out[k - 2, 1], out[k - 1, 0],
                                        out[k - 1, 1], p[i, 0], p[i, 1]) <= 0.0:
            k -= 1
        out[k, 0] = p[i, 0]
        out[k, 1] = p[i, 1]
        k += 1
    # last point repeats the first one
    k -= 1
    if k == 2 and out[0, 0] == out[1, 0] and out[0, 1] == out[1, 1]:
        k = 1
    return out[:k].copy()


@njit(cache=True, nogil=True)
def perimeter(v):
    h = v.shape[0]
    if h <= 1:
        return 0.0
    if h == 2:
        return 2.0 * np.hypot(v[1, 0] - v[0, 0], v[1, 1] - v[0, 1])
    s = 0.0
    for i in range(h):
        j = (i + 1) % h
        s += np.hypot(v[j, 0] - v[i, 0], v[j, 1] - v[i, 1])
    return s


@njit(cache=True, nogil=True)
def area(v):
    h = v.shape[0]
    if h <= 2:
        return 0.0
    # shoelace relative to the first vertex keeps the terms small
    x0 = v[0, 0]
    y0 = v[0, 1]
    s = 0.0
    for i in range(1, h - 1):
        s += _cross(x0, y0, v[i, 0], v[i, 1], v[i + 1, 0], v[i + 1, 1])
    return 0.5 * abs(s)


@njit(cache=True, nogil=True)
def _d2(v, i, j):
    dx = v[i, 0] - v[j, 0]
    dy = v[i, 1] - v[j, 1]
    return dx * dx + dy * dy


@njit(cache=True, nogil=True)
def diameter_sq(v):
    """Squared diameter of a strictly convex CCW polygon (rotating calipers)."""
    h = v.shape[0]
    if h <= 1:
        return 0.0
    if h == 2:
        return _d2(v, 0, 1)
    best = 0.0
    j = 1
    for i in range(h):
        ni = (i + 1) % h
        while True:
            nj = (j + 1) % h
            a_next = abs(_cross(v[i, 0], v[i, 1], v[ni, 0], v[ni, 1], v[nj, 0], v[nj, 1]))
            a_cur = abs(_cross(v[i, 0], v[i, 1], v[ni, 0], v[ni, 1], v[j, 0], v[j, 1]))
            if a_next > a_cur:
                j = nj
            else:
                break
        nj = (j + 1) % h
        best = max(best, _d2(v, i, j), _d2(v, ni, j), _d2(v, i, nj), _d2(v, ni, nj))
    return best


@njit(cache=True, nogil=True)
def diameter(v):
    return np.sqrt(diameter_sq(v))


@njit(cache=True, nogil=True)
def _in_circle(cx, cy, r, x, y):
    dx = x - cx
    dy = y - cy
    return np.sqrt(dx * dx + dy * dy) <= r * (1.0 + 1e-12) + 1e-300


@njit(cache=True, nogil=True)
def _circle2(ax, ay, bx, by):
    cx = 0.5 * (ax + bx)
    cy = 0.5 * (ay + by)
    return cx, cy, 0.5 * np.hypot(ax - bx, ay - by)


@njit(cache=True, nogil=True)
def _circle3(ax, ay, bx, by, qx, qy):
    # circumcircle, coordinates relative to a for accuracy
    bx -= ax
    by -= ay
    qx -= ax
    qy -= ay
    d = 2.0 * (bx * qy - by * qx)
    scale = (bx * bx + by * by) + (qx * qx + qy * qy)
    if abs(d) <= 1e-14 * scale:
        # (nearly) collinear: diametral circle of the farthest pair
        c1 = _circle2(0.0, 0.0, bx, by)
        c2 = _circle2(0.0, 0.0, qx, qy)
        c3 = _circle2(bx, by, qx, qy)
        best = c1
        if c2[2] > best[2]:
            best = c2
        if c3[2] > best[2]:
            best = c3
        return best[0] + ax, best[1] + ay, best[2]
    b2 = bx * bx + by * by
    q2 = qx * qx + qy * qy
    ux = (qy * b2 - by * q2) / d
    uy = (bx * q2 - qx * b2) / d
    return ux + ax, uy + ay, np.hypot(ux, uy)


@njit(cache=True, nogil=True)
def _shuffled(pts, seed):
    n = pts.shape[0]
    p = pts.copy()
    state = np.uint64(seed) * np.uint64(0x9E3779B97F4A7C15) + np.uint64(1)
    for i in range(n - 1, 0, -1):
        # xorshift64*
        state ^= state >> np.uint64(12)
        state ^= state << np.uint64(25)
        state ^= state >> np.uint64(27)
        r = state * np.uint64(0x2545F4914F6CDD1D)
        j = np.int64(r % np.uint64(i + 1))
        tx = p[i, 0]
        ty = p[i, 1]
        p[i, 0] = p[j, 0]
        p[i, 1] = p[j, 1]
        p[j, 0] = tx
        p[j, 1] = ty
    return p


@njit(cache=True, nogil=True)
def min_enclosing_circle(pts, seed=0x5EED):
    """Randomized incremental (Welzl-type) smallest enclosing circle.

    Iterative form with boundary sets of size one, two and three, so there
    is no recursion depth to worry about.  Returns ``(cx, cy, r)``.
    """
    n = pts.shape[0]
    p = _shuffled(pts, seed)
    cx = p[0, 0]
    cy = p[0, 1]
    r = 0.0
    for i in range(1, n):
        if _in_circle(cx, cy, r, p[i, 0], p[i, 1]):
            continue
        cx = p[i, 0]
        cy = p[i, 1]
        r = 0.0
        for j in range(i):
            if _in_circle(cx, cy, r, p[j, 0], p[j, 1]):
                continue
            cx, cy, r = _circle2(p[i, 0], p[i, 1], p[j, 0], p[j, 1])
            for k in range(j):
                if _in_circle(cx, cy, r, p[k, 0], p[k, 1]):
                    continue
                cx, cy, r = _circle3(p[i, 0], p[i, 1], p[j, 0], p[j, 1], p[k, 0], p[k, 1])
    return cx, cy, r


# --------------------------------------------------------------------------
# dense two-phase simplex, Bland's rule


@njit(cache=True, nogil=True)
def _pivot(T, basis, row, col):
    T[row] /= T[row, col]
    for i in range(T.shape[0]):
        if i != row:
            f = T[i, col]
            if f != 0.0:
                T[i] -= f * T[row]
    basis[row] = col


@njit(cache=True, nogil=True)
def _run_simplex(T, basis, ncols_allowed, max_iter):
    """Minimise; the last tableau row holds reduced costs.  0 optimal, 2 unbounded."""
    m = T.shape[0] - 1
    rhs = T.shape[1] - 1
    for _ in range(max_iter):
        col = -1
        for j in range(ncols_allowed):
            if T[m, j] < -PIVOT_TOL:
                col = j
                break
        if col < 0:
            return LP_OPTIMAL
        row = -1
        best = np.inf
        for i in range(m):
            a = T[i, col]
            if a > PIVOT_TOL:
                ratio = T[i, rhs] / a
                if row < 0:
                    best = ratio
                    row = i
                    continue
                tie = 1e-14 * (1.0 + abs(best))
                if ratio < best - tie or (abs(ratio - best) <= tie and basis[i] < basis[row]):
                    best = ratio
                    row = i
        if row < 0:
            return LP_UNBOUNDED
        _pivot(T, basis, row, col)
    return LP_OPTIMAL


@njit(cache=True, nogil=True)
def simplex(c, G, h):
    """maximize c.z subject to G z <= h, z free.

    Returns ``(status, z, objective)``.
    """
    m, n = G.shape
    nneg = 0
    for i in range(m):
        if h[i] < 0.0:
            nneg += 1
    ncols = 2 * n + m + nneg
    T = np.zeros((m + 1, ncols + 1))
    basis = np.empty(m, dtype=np.int64)
    a = 0
    for i in range(m):
        s = -1.0 if h[i] < 0.0 else 1.0
        for j in range(n):
            T[i, j] = s * G[i, j]
            T[i, n + j] = -s * G[i, j]
        T[i, 2 * n + i] = s
        T[i, ncols] = s * h[i]
        if s < 0.0:
            T[i, 2 * n + m + a] = 1.0
            basis[i] = 2 * n + m + a
            a += 1
        else:
            basis[i] = 2 * n + i
    max_iter = 50 * (ncols + m) + 1000
    z = np.zeros(n)
    hscale = 1.0
    for i in range(m):
        hscale = max(hscale, abs(h[i]))

    if nneg > 0:
        for i in range(m):
            if basis[i] >= 2 * n + m:
                T[m] -= T[i]
        for j in range(2 * n + m, ncols):
            T[m, j] = 0.0
        _run_simplex(T, basis, ncols, max_iter)
        if -T[m, ncols] > FEAS_TOL * hscale:
            return LP_INFEASIBLE, z, np.nan
        # drive zero-level artificials out of the basis
        for i in range(m):
            if basis[i] >= 2 * n + m:
                for j in range(2 * n + m):
                    if abs(T[i, j]) > PIVOT_TOL:
                        _pivot(T, basis, i, j)
                        break

    T[m] = 0.0
    for j in range(n):
        T[m, j] = -c[j]
        T[m, n + j] = c[j]
    for i in range(m):
        cb = T[m, basis[i]]
        if cb != 0.0:
            T[m] -= cb * T[i]
    # artificial columns are never allowed back in
    status = _run_simplex(T, basis, 2 * n + m, max_iter)
    if status == LP_UNBOUNDED:
        return LP_UNBOUNDED, z, np.inf
    for i in range(m):
        b = basis[i]
        if b < n:
            z[b] += T[i, ncols]
        elif b < 2 * n:
            z[b - n] -= T[i, ncols]
    obj = 0.0
    for j in range(n):
        obj += c[j] * z[j]
    return LP_OPTIMAL, z, obj


@njit(cache=True, nogil=True)
def chebyshev_lp(v):
    """Largest inscribed circle of a strictly convex CCW polygon via the LP.

    Returns ``(cx, cy, rho)``; ``rho`` is 0 for polygons with < 3 vertices.
    """
    h = v.shape[0]
    if h < 3:
        if h == 0:
            return np.nan, np.nan, 0.0
        return v[:, 0].mean(), v[:, 1].mean(), 0.0
    ox = v[:, 0].mean()
    oy = v[:, 1].mean()
    G = np.empty((h + 1, 3))
    rhs = np.empty(h + 1)
    for i in range(h):
        j = (i + 1) % h
        ex = v[j, 0] - v[i, 0]
        ey = v[j, 1] - v[i, 1]
        L = np.hypot(ex, ey)
        ax = ey / L
        ay = -ex / L
        G[i, 0] = ax
        G[i, 1] = ay
        G[i, 2] = 1.0
        rhs[i] = ax * (v[i, 0] - ox) + ay * (v[i, 1] - oy)
    G[h, 0] = 0.0
    G[h, 1] = 0.0
    G[h, 2] = -1.0
    rhs[h] = 0.0
    c = np.array([0.0, 0.0, 1.0])
    status, z, obj = simplex(c, G, rhs)
    if status != LP_OPTIMAL:
        return np.nan, np.nan, 0.0
    return z[0] + ox, z[1] + oy, max(obj, 0.0)


@njit(cache=True, nogil=True)
def inradius(v):
    return chebyshev_lp(v)[2]


@njit(cache=True, nogil=True)
def circumradius(v):
    if v.shape[0] == 0:
        return 0.0
    return min_enclosing_circle(v)[2]


# --------------------------------------------------------------------------
# incremental hull maintenance (hull stored CCW in a preallocated buffer)


@njit(cache=True, nogil=True)
def point_in_hull(v, n, x, y):
    """Closed-set membership for a strictly convex CCW polygon, O(log n)."""
    if n < 3:
        return False
    x0 = v[0, 0]
    y0 = v[0, 1]
    if _cross(x0, y0, v[1, 0], v[1, 1], x, y) < 0.0:
        return False
    if _cross(x0, y0, v[n - 1, 0], v[n - 1, 1], x, y) > 0.0:
        return False
    lo = 1
    hi = n - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _cross(x0, y0, v[mid, 0], v[mid, 1], x, y) >= 0.0:
            lo = mid
        else:
            hi = mid
    return _cross(v[lo, 0], v[lo, 1], v[lo + 1, 0], v[lo + 1, 1], x, y) >= 0.0


@njit(cache=True, nogil=True)
def insert_point(v, n, x, y, tmp):
    """Add (x, y) to the hull held in ``v[:n]``; returns the new vertex count.

    ``tmp`` is scratch space of the same shape as ``v``.  Returns -1 if the
    buffer would overflow.
    """
    if n < 3:
        pts = np.empty((n + 1, 2))
        pts[:n] = v[:n]
        pts[n, 0] = x
        pts[n, 1] = y
        h = monotone_chain(pts)
        m = h.shape[0]
        v[:m] = h
        return m
    if point_in_hull(v, n, x, y):
        return n
    # visible edges (cross <= 0) form one cyclic run s .. e-1
    s = -1
    for i in range(n):
        j = (i + 1) % n
        vis_i = _cross(v[i, 0], v[i, 1], v[j, 0], v[j, 1], x, y) <= 0.0
        p = (i - 1) % n
        vis_p = _cross(v[p, 0], v[p, 1], v[i, 0], v[i, 1], x, y) <= 0.0
        if vis_i and not vis_p:
            s = i
            break
    if s < 0:
        return n
    e = s
    k = 0
    while k < n:
        j = (e + 1) % n
        if _cross(v[e, 0], v[e, 1], v[j, 0], v[j, 1], x, y) <= 0.0:
            e = j
            k += 1
        else:
            break
    # new polygon: p, v_e, v_{e+1}, ..., v_s
    m = n - k + 2
    if m > v.shape[0]:
        return -1
    tmp[0, 0] = x
    tmp[0, 1] = y
    idx = e
    for t in range(1, m):
        tmp[t, 0] = v[idx, 0]
        tmp[t, 1] = v[idx, 1]
        idx = (idx + 1) % n
    v[:m] = tmp[:m]
    return m
