"""Scalar minimization and the upper bound on the mean inverse-inradius time."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple, Sequence

from . import analytic, quad

_GOLD = 0.5 * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class ScalarObjective:
    """``f`` on the open interval ``(lo, hi)``; ``scan`` seeds the bracket search."""

    f: Callable[[float], float]
    lo: float
    hi: float
    scan: Sequence[float] = ()

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("empty domain")

    def scan_points(self) -> list[float]:
        pts = [x for x in self.scan if self.lo < x < self.hi]
        if pts:
            return sorted(pts)
        if math.isinf(self.hi) or math.isinf(self.lo):
            base = 0.0 if math.isinf(self.lo) else self.lo
            return [base + 2.0 ** k for k in range(-6, 12)]
        return [self.lo + (self.hi - self.lo) * k / 32 for k in range(1, 32)]


class Minimum(NamedTuple):
    x: float
    fx: float


def _brent(f, a: float, b: float, x: float, fx: float, tol: float, maxiter: int = 500) -> Minimum:
    """Brent's minimizer on ``[a, b]`` starting from an interior ``x``."""
    w = v = x
    fw = fv = fx
    d = e = 0.0
    for _ in range(maxiter):
        m = 0.5 * (a + b)
        tol1 = tol + 1e-12 * abs(x)
        tol2 = 2.0 * tol1
        if abs(x - m) <= tol2 - 0.5 * (b - a):
            break
        use_golden = True
        if abs(e) > tol1:
            # fit a parabola through x, w, v
            r = (x - w) * (fx - fv)
            q = (x - v) * (fx - fw)
            p = (x - v) * q - (x - w) * r
            q = 2.0 * (q - r)
            if q > 0:
                p = -p
            q = abs(q)
            if abs(p) < abs(0.5 * q * e) and q * (a - x) < p < q * (b - x):
                e, d = d, p / q
                u = x + d
                if u - a < tol2 or b - u < tol2:
                    d = tol1 if m >= x else -tol1
                use_golden = False
        if use_golden:
            e = (b - x) if x < m else (a - x)
            d = _GOLD * e
        u = x + (d if abs(d) >= tol1 else math.copysign(tol1, d))
        fu = f(u)
        if fu <= fx:
            if u < x:
                b = x
            else:
                a = x
            v, fv, w, fw, x, fx = w, fw, x, fx, u, fu
        else:
            if u < x:
                a = u
            else:
                b = u
            if fu <= fw or w == x:
                v, fv, w, fw = w, fw, u, fu
            elif fu <= fv or v == x or v == w:
                v, fv = u, fu
    return Minimum(x, fx)


def brent_minimize(obj: ScalarObjective, tol: float = 1e-6) -> Minimum:
    """Minimize ``obj.f``: scan for a bracketing triple, then Brent's method.

    Raises ``ValueError`` if no interior scan point is at or below both of
    its neighbours.  The domain ends never serve as bracket endpoints.
    """
    pts = obj.scan_points()
    vals = [obj.f(x) for x in pts]
    best = None
    for i in range(1, len(pts) - 1):
        if vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1]:
            if best is None or vals[i] < vals[best]:
                best = i
    if best is None:
        raise ValueError("no bracket found: the scan is monotone over the domain")
    return _brent(obj.f, pts[best - 1], pts[best + 1], pts[best], vals[best], tol)


# --------------------------------------------------------------------------

A_SCAN = (4.5, 5.0, 6.0, 8.0, 10.0, 14.0, 20.0, 30.0)
SQRT3 = math.sqrt(3.0)


def slit_leg(a: float) -> float:
    """``r(a)`` with type-A triangle inradius exactly 1, for ``a > 4``."""
    return 4.0 * (a - (2.0 - SQRT3)) / (a - 4.0)


def inradius_objective(c_min: float | None = None) -> ScalarObjective:
    """Expected time of the two-stage construction reaching inradius 1, as a function of ``a``."""
    if c_min is None:
        c_min = quad.min_range_constant().value
    slit6 = analytic.slit_exit_mean(6)

    def f(a: float) -> float:
        return c_min * a * a + slit6 * slit_leg(a) ** 2

    return ScalarObjective(f, 4.0, math.inf, A_SCAN)


class InradiusBound(NamedTuple):
    bound: float
    a_star: float
    r_star: float


@lru_cache(maxsize=4)
def inradius_upper_bound(c_min: float | None = None, tol: float = 1e-6) -> InradiusBound:
    """Minimum over ``a > 4`` of the two-stage bound on ``E[Theta^r(1)]``."""
    a, fa = brent_minimize(inradius_objective(c_min), tol)
    return InradiusBound(fa, a, slit_leg(a))
