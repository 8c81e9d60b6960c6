"""Adaptive Gauss-Kronrod quadrature and two hard integral constants.

:func:`adaptive_quad` is a globally adaptive (G7, K15) integrator in the
QUADPACK mould: keep a heap of subintervals, always bisect the one with the
largest error estimate, stop once the summed estimate is below ``tol``.
The error estimate of a panel is the plain ``|K15 - G7|``, which is
pessimistic for smooth integrands, exactly what we want for a reported
bound.
"""
from __future__ import annotations

import heapq
import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

# Kronrod abscissae (positive half, descending) and weights; the Gauss
# 7-point rule uses every other node, xgk[1], xgk[3], xgk[5], xgk[7].
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# full 15-node rule on [-1, 1]
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KW = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GW = np.zeros(15)
_GW[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:3], [_WG[3]], _WG[2::-1]])


class QuadratureWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class QuadResult:
    value: float
    abs_error_estimate: float
    evaluations: int
    converged: bool = True

    def __float__(self) -> float:
        return self.value


def _panel(g, a: float, b: float) -> tuple[float, float]:
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    y = g(c + h * _NODES)
    k = h * float(_KW @ y)
    gs = h * float(_GW @ y)
    return k, abs(k - gs)


def adaptive_quad(f: Callable, a: float, b: float, tol: float = 1e-10, *,
                  vectorized: bool = False, limit: int = 2000) -> QuadResult:
    """Integrate ``f`` over ``(a, b)``; either end may be infinite.

    Nodes are strictly interior, so ``f`` is never evaluated at ``a`` or
    ``b`` and integrable endpoint singularities are fine.  Infinite ranges
    go through ``t = a + u / (1 - u)`` (and its mirror image).  With
    ``vectorized=True`` ``f`` receives an array of 15 nodes per call.

    If ``limit`` subintervals are not enough, the best value so far is
    returned with ``converged=False`` and a :class:`QuadratureWarning`.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if math.isnan(a) or math.isnan(b):
        raise ValueError("integration limits must not be NaN")
    if a == b:
        return QuadResult(0.0, 0.0, 0)
    if a > b:
        r = adaptive_quad(f, b, a, tol, vectorized=vectorized, limit=limit)
        return QuadResult(-r.value, r.abs_error_estimate, r.evaluations, r.converged)

    if vectorized:
        base = lambda x: np.asarray(f(x), dtype=float)
    else:
        base = lambda x: np.array([f(float(t)) for t in x], dtype=float)

    if math.isinf(a) and math.isinf(b):
        # split at 0 and add the two halves
        left = adaptive_quad(f, -math.inf, 0.0, tol / 2, vectorized=vectorized, limit=limit)
        right = adaptive_quad(f, 0.0, math.inf, tol / 2, vectorized=vectorized, limit=limit)
        return QuadResult(left.value + right.value,
                          left.abs_error_estimate + right.abs_error_estimate,
                          left.evaluations + right.evaluations,
                          left.converged and right.converged)
    if math.isinf(b):
        g = lambda u: base(a + u / (1.0 - u)) / (1.0 - u) ** 2
        lo, hi = 0.0, 1.0
    elif math.isinf(a):
        g = lambda u: base(b - u / (1.0 - u)) / (1.0 - u) ** 2
        lo, hi = 0.0, 1.0
    else:
        g = base
        lo, hi = a, b

    val, err = _panel(g, lo, hi)
    evals = 15
    heap = [(-err, lo, hi, val)]
    total_val, total_err = val, err
    converged = True
    while total_err > tol:
        if len(heap) >= limit:
            converged = False
            warnings.warn(f"adaptive_quad: subdivision limit {limit} reached, "
                          f"error estimate {total_err:.3g} > tol {tol:.3g}",
                          QuadratureWarning, stacklevel=2)
            break
        neg, x0, x1, v = heapq.heappop(heap)
        mid = 0.5 * (x0 + x1)
        if not (x0 < mid < x1):
            # interval cannot be split further in floating point
            converged = False
            heapq.heappush(heap, (neg, x0, x1, v))
            warnings.warn("adaptive_quad: interval underflow", QuadratureWarning, stacklevel=2)
            break
        v1, e1 = _panel(g, x0, mid)
        v2, e2 = _panel(g, mid, x1)
        evals += 30
        heapq.heappush(heap, (-e1, x0, mid, v1))
        heapq.heappush(heap, (-e2, mid, x1, v2))
        # resum from scratch now and then to stop drift in the running totals
        total_val = math.fsum(item[3] for item in heap)
        total_err = math.fsum(-item[0] for item in heap)
    if not math.isfinite(total_val):
        raise FloatingPointError("integrand produced a non-finite value")
    return QuadResult(total_val, total_err, evals, converged)


# --------------------------------------------------------------------------
# the minimum of two independent range times


_LEMMA_SERIES_CUTOFF = 0.05


def _lemma_series(t: float) -> float:
    """``(1 - 4/(cos t + cosh t)^2) / t^3`` by series, for small ``t``.

    With ``x = (cos t + cosh t)/2 - 1 = sum_k t^(4k)/(4k)!`` the numerator is
    ``x (2 + x) / (1 + x)^2``; the series for ``x`` has no cancellation.
    """
    t4 = t ** 4
    x = 0.0
    term = 1.0
    k = 0
    while True:
        term *= t4 / ((4 * k + 1) * (4 * k + 2) * (4 * k + 3) * (4 * k + 4))
        k += 1
        x += term
        if term < 1e-18 * x:
            break
    return x * (2.0 + x) / (1.0 + x) ** 2 / t ** 3


def _lemma_direct(t: float) -> float:
    if t > 40.0:
        # 4 / (cos t + cosh t)^2 < 1e-33 here
        return 1.0 / t ** 3
    s = math.cos(t) + math.cosh(t)
    return (1.0 - 4.0 / (s * s)) / t ** 3


def min_range_integrand(t: float) -> float:
    """Integrand ``(1 - 4/(cos t + cosh t)^2) t^-3`` of the min-range constant."""
    if t <= 0.0:
        return 0.0
    if t < _LEMMA_SERIES_CUTOFF:
        return _lemma_series(t)
    return _lemma_direct(t)


def min_range_constant(tol: float = 1e-10) -> QuadResult:
    """``E[min(T1, T2)]`` for two independent copies ``T`` of the first time
    a one-dimensional Brownian range exceeds 1.

    Equals ``1/2 - (2/pi) * int_0^inf (1 - 4/(cos t + cosh t)^2) t^-3 dt``.
    """
    parts = [adaptive_quad(min_range_integrand, lo, hi, tol / 4)
             for lo, hi in ((0.0, 1.0), (1.0, 10.0), (10.0, math.inf))]
    integral = math.fsum(p.value for p in parts)
    err = math.fsum(p.abs_error_estimate for p in parts)
    return QuadResult(0.5 - 2.0 / math.pi * integral, 2.0 / math.pi * err,
                      sum(p.evaluations for p in parts), all(p.converged for p in parts))


# --------------------------------------------------------------------------
# the second moment of the perimeter at t = 1

_HALF_PI = 0.5 * math.pi


def p2_integrand_naive(theta, u):
    """``cos(theta) cosh(u theta) / sinh(u pi/2) * tanh((2 theta + pi) u / 4)``, as written."""
    return (np.cos(theta) * np.cosh(u * theta) / np.sinh(u * _HALF_PI)
            * np.tanh((2.0 * theta + math.pi) * u / 4.0))


def p2_second_factor(theta: float, u):
    """``(1 - exp(-u (theta + pi/2))) / (1 - exp(-u pi))`` with its ``u -> 0`` limit.

    Both differences are computed with ``expm1``, which keeps full
    relative accuracy down to ``u = 0``; the limit ``1/2 + theta/pi`` is used
    only where ``u`` underflows.
    """
    u = np.asarray(u, dtype=float)
    num = -np.expm1(-u * (theta + _HALF_PI))
    den = -np.expm1(-u * math.pi)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = num / den
    return np.where(u * math.pi < 1e-300, 0.5 + theta / math.pi, out)


def p2_integrand(theta: float, u):
    """Overflow-free form of the inner integrand (without the ``cos theta`` factor)."""
    u = np.asarray(u, dtype=float)
    s = theta + _HALF_PI
    first = (np.exp(u * (theta - _HALF_PI)) + np.exp(-u * s)) / (1.0 + np.exp(-u * s))
    return first * p2_second_factor(theta, u)


def perimeter_second_moment(inner_tol: float = 1e-9, outer_tol: float = 1e-8) -> QuadResult:
    """``E[P(1)^2]`` as an iterated integral over ``u in (0, inf)`` then ``theta``.

    The outer error estimate adds the outer ``|K - G|`` budget to the
    accumulated inner errors.
    """
    inner_err = [0.0]
    evals = [0]

    def inner(theta: float) -> float:
        r = adaptive_quad(lambda u: p2_integrand(theta, u), 0.0, math.inf,
                          inner_tol, vectorized=True)
        inner_err[0] = max(inner_err[0], r.abs_error_estimate)
        evals[0] += r.evaluations
        return math.cos(theta) * r.value

    outer = adaptive_quad(inner, -_HALF_PI, _HALF_PI, outer_tol)
    scale = 4.0 * math.pi
    err = scale * (outer.abs_error_estimate + math.pi * inner_err[0])
    return QuadResult(scale * outer.value, err, evals[0], outer.converged)
