"""Compiled inner loops of the Monte Carlo engine.

Hull functionals are tracked lazily.  After an exact evaluation ``F`` at
anchor point ``W_k``, every later hull is contained in ``hull_k`` dilated
by ``delta = max_j |W_j - W_k|``, and each functional grows at most like

    P + 2 pi delta,   A + P delta + pi delta^2,   D + 2 delta,
    R + delta,        r + delta.

So an exact (and possibly expensive) re-evaluation is needed only once the
walk has moved far enough from the anchor for the bound to reach the
level, and only if the hull actually changed.  First-hit steps stay exact.
"""
import numpy as np
from numba import njit

from . import _kernels as K

# functional codes; order shared with sim.FunctionalKind
PERIM, AREA, DIAM, CIRC, INRAD, RMIN, RX, RY = range(8)
N_KINDS = 8
N_HULL_KINDS = 5

# indices into the float state vector
S_X, S_Y, S_XMIN, S_XMAX, S_YMIN, S_YMAX = range(6)
# indices into the int state vector
I_STEP, I_NHULL = range(2)
# t=1 record: P, A, D, R, r, R1, R2, W(1/2) x y, W(1) x y
T1_SIZE = 11


@njit(cache=True, nogil=True)
def hull_functional(q, v):
    if q == PERIM:
        return K.perimeter(v)
    if q == AREA:
        return K.area(v)
    if q == DIAM:
        return K.diameter(v)
    if q == CIRC:
        return K.circumradius(v)
    if v.shape[0] < 3:
        return 0.0
    return K.inradius(v)


@njit(cache=True, nogil=True)
def _safe_radius(q, val, level, perim):
    """Displacement from the anchor that cannot lift functional ``q`` above ``level``."""
    gap = level - val
    if gap <= 0.0:
        return 0.0
    if q == PERIM:
        return gap / (2.0 * np.pi)
    if q == AREA:
        return (-perim + np.sqrt(perim * perim + 4.0 * np.pi * gap)) / (2.0 * np.pi)
    if q == DIAM:
        return 0.5 * gap
    return gap


@njit(cache=True, nogil=True)
def init_state(fstate, istate, hull, anchor, rho2, fval, dirty, levels):
    fstate[:] = 0.0
    istate[I_STEP] = 0
    istate[I_NHULL] = 1
    hull[0, 0] = 0.0
    hull[0, 1] = 0.0
    for q in range(N_HULL_KINDS):
        anchor[q, 0] = 0.0
        anchor[q, 1] = 0.0
        fval[q] = 0.0
        dirty[q] = False
        r = _safe_radius(q, 0.0, levels[q], 0.0)
        rho2[q] = r * r


@njit(cache=True, nogil=True)
def scan_block(incs, sdt, fstate, istate, hull, tmp, anchor, rho2, fval, dirty,
               levels, active, hit, t1_step, t1_out, max_step):
    """Advance one path through a block of standard-normal increments.

    Returns the number of increments consumed, or -1 on hull-buffer
    overflow.  Stops early once nothing is left to do.
    """
    x = fstate[S_X]
    y = fstate[S_Y]
    xmin = fstate[S_XMIN]
    xmax = fstate[S_XMAX]
    ymin = fstate[S_YMIN]
    ymax = fstate[S_YMAX]
    step = istate[I_STEP]
    n = istate[I_NHULL]
    half = t1_step // 2
    used = 0
    for i in range(incs.shape[0]):
        n_active = 0
        for q in range(N_KINDS):
            if active[q]:
                n_active += 1
        if (n_active == 0 and step >= t1_step) or step >= max_step:
            break
        x += sdt * incs[i, 0]
        y += sdt * incs[i, 1]
        step += 1
        used += 1
        if x < xmin:
            xmin = x
        elif x > xmax:
            xmax = x
        if y < ymin:
            ymin = y
        elif y > ymax:
            ymax = y

        rx = xmax - xmin
        ry = ymax - ymin
        if active[RX] and rx > levels[RX]:
            active[RX] = False
            hit[RX] = step
        if active[RY] and ry > levels[RY]:
            active[RY] = False
            hit[RY] = step
        if active[RMIN] and max(rx, ry) > levels[RMIN]:
            active[RMIN] = False
            hit[RMIN] = step

        # the vertex count alone cannot tell whether the hull moved
        if n < 3 or not K.point_in_hull(hull, n, x, y):
            n = K.insert_point(hull, n, x, y, tmp)
            if n < 0:
                return -1
            for q in range(N_HULL_KINDS):
                dirty[q] = True

        v = hull[:n]
        for q in range(N_HULL_KINDS):
            if not active[q] or not dirty[q]:
                continue
            dx = x - anchor[q, 0]
            dy = y - anchor[q, 1]
            if dx * dx + dy * dy <= rho2[q]:
                continue
            val = hull_functional(q, v)
            dirty[q] = False
            fval[q] = val
            if val > levels[q]:
                active[q] = False
                hit[q] = step
            else:
                anchor[q, 0] = x
                anchor[q, 1] = y
                perim = K.perimeter(v) if q == AREA else 0.0
                r = _safe_radius(q, val, levels[q], perim)
                rho2[q] = r * r

        if step == half:
            t1_out[7] = x
            t1_out[8] = y
        if step == t1_step:
            for q in range(N_HULL_KINDS):
                t1_out[q] = hull_functional(q, v)
            t1_out[5] = rx
            t1_out[6] = ry
            t1_out[9] = x
            t1_out[10] = y

    fstate[S_X] = x
    fstate[S_Y] = y
    fstate[S_XMIN] = xmin
    fstate[S_XMAX] = xmax
    fstate[S_YMIN] = ymin
    fstate[S_YMAX] = ymax
    istate[I_STEP] = step
    istate[I_NHULL] = n
    return used


# --------------------------------------------------------------------------
# radial slit plane exit


@njit(cache=True, nogil=True)
def _dist_to_slits(x, y, cs, sn, radius):
    best = np.inf
    for k in range(cs.shape[0]):
        along = x * cs[k] + y * sn[k]
        if along >= radius:
            d = abs(-x * sn[k] + y * cs[k])
        else:
            d = np.hypot(x - radius * cs[k], y - radius * sn[k])
        if d < best:
            best = d
    return best


@njit(cache=True, nogil=True)
def segment_hits_slits(px, py, qx, qy, cs, sn, radius):
    """Does the segment p->q meet any ray {rho * e_k : rho >= radius}?"""
    for k in range(cs.shape[0]):
        # coordinates in the frame of ray k
        pa = px * cs[k] + py * sn[k]
        pb = -px * sn[k] + py * cs[k]
        qa = qx * cs[k] + qy * sn[k]
        qb = -qx * sn[k] + qy * cs[k]
        if pb == 0.0 and qb == 0.0:
            if max(pa, qa) >= radius:
                return True
            continue
        if (pb > 0.0 and qb > 0.0) or (pb < 0.0 and qb < 0.0):
            continue
        xa = pa + (qa - pa) * pb / (pb - qb)
        if xa >= radius:
            return True
    return False


@njit(cache=True, nogil=True)
def slit_block(incs, state, cs, sn, radius, dt_base, kappa, horizon):
    """Adaptive-step walk until the path crosses a slit or reaches ``horizon``.

    ``state`` holds (x, y, t, exited).  The step is ``(d / kappa)**2`` with
    ``d`` the distance to the slits, never below ``dt_base``: far from the
    slits the increments are large but still exact Gaussian samples of the
    path, and a crossing-and-return inside one such step has probability of
    order ``exp(-kappa**2 / 2)``.
    """
    x = state[0]
    y = state[1]
    t = state[2]
    used = 0
    for i in range(incs.shape[0]):
        if state[3] != 0.0 or t >= horizon:
            break
        d = _dist_to_slits(x, y, cs, sn, radius)
        dt = (d / kappa) ** 2
        if dt < dt_base:
            dt = dt_base
        if t + dt > horizon:
            dt = horizon - t
        s = np.sqrt(dt)
        nx = x + s * incs[i, 0]
        ny = y + s * incs[i, 1]
        used += 1
        t += dt
        if segment_hits_slits(x, y, nx, ny, cs, sn, radius):
            state[3] = 1.0
        x = nx
        y = ny
    state[0] = x
    state[1] = y
    state[2] = t
    return used
