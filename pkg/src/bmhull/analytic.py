"""Closed-form quantities: exact means, densities, transforms and bounds.

All functions take and return plain floats.  Infinite expectations are
returned as ``math.inf`` rather than raised.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from . import quad

SQRT_PI = math.sqrt(math.pi)

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(x: float) -> float:
    """Gamma function for real ``x > 0`` (Lanczos, relative error ~1e-15)."""
    x = float(x)
    if not x > 0:
        raise ValueError("gamma_fn is only defined here for x > 0")
    if x < 0.5:
        # reflection keeps the approximation in its accurate range
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    x -= 1.0
    s = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        s += _LANCZOS[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (x + 0.5) * math.exp(-t) * s


def _check_time(t: float) -> float:
    t = float(t)
    if t < 0 or math.isnan(t):
        raise ValueError("time must be >= 0")
    return t


def exact_mean_perimeter(t: float = 1.0) -> float:
    """``E[P(t)] = sqrt(8 pi t)``."""
    return math.sqrt(8.0 * math.pi * _check_time(t))


def exact_mean_area(t: float = 1.0) -> float:
    """``E[A(t)] = pi t / 2``."""
    return 0.5 * math.pi * _check_time(t)


# --------------------------------------------------------------------------
# range of a one-dimensional Brownian motion

_TERM_TOL = 1e-14
_MAX_TERMS = 200
# below this the alternating series needs many terms and loses digits to
# cancellation; the dual (theta-function) form converges fast there instead
_RANGE_DUAL_BELOW = 1.5


def _range_density_direct(x: float) -> float:
    c = 8.0 / math.sqrt(2.0 * math.pi)
    s = 0.0
    for n in range(1, _MAX_TERMS + 1):
        term = n * n * math.exp(-0.5 * n * n * x * x)
        s += term if n % 2 else -term
        if c * term < _TERM_TOL:
            break
    return c * s


def _range_density_dual(x: float) -> float:
    # same density rewritten through Theta(1) = 1 / R(1)^2 in law
    s = 0.0
    for k in range(_MAX_TERMS):
        m2 = (math.pi * (2 * k + 1) / x) ** 2
        term = (m2 - 1.0) * math.exp(-0.5 * m2)
        s += term
        if abs(term) < _TERM_TOL * abs(s) or m2 > 1500.0:
            break
    return 8.0 / x ** 3 * s


def range_density(x: float) -> float:
    """Density of the range ``max W - min W`` of a standard Brownian motion on [0, 1].

    Zero for ``x <= 0``.
    """
    x = float(x)
    if x <= 0.0:
        return 0.0
    if x < _RANGE_DUAL_BELOW:
        return _range_density_dual(x)
    return _range_density_direct(x)


def theta_density(t: float) -> float:
    """Density of the first time the range of a standard Brownian motion exceeds 1."""
    t = float(t)
    if t <= 0.0:
        return 0.0
    if t < 0.5:
        # small t: the series below converges slowly, go through the range
        return range_density(1.0 / math.sqrt(t)) / (2.0 * t ** 1.5)
    s = 0.0
    for k in range(_MAX_TERMS):
        m = ((2 * k + 1) * math.pi) ** 2
        term = (m * t - 1.0) * math.exp(-0.5 * m * t)
        s += term
        if abs(term) < _TERM_TOL:
            break
    return 4.0 * s


def theta_laplace(lam: float, y: float = 1.0) -> float:
    """``E exp(-lam Theta(y)) = sech(y sqrt(lam/2))**2``."""
    if lam < 0:
        raise ValueError("lam must be >= 0")
    if not y > 0:
        raise ValueError("level must be positive")
    z = y * math.sqrt(0.5 * lam)
    if z > 350.0:
        return 0.0
    return 1.0 / math.cosh(z) ** 2


def theta_diff_charfn(s: float) -> float:
    """``4 / (cos sqrt(s) + cosh sqrt(s))**2``.

    This is ``E exp(i s (T1 - T2))`` for independent copies ``T1, T2`` of
    the unit range time: the product of the Laplace transform
    ``sech(sqrt(z/2))**2`` continued to ``z = -is`` and ``z = is``.
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    r = math.sqrt(s)
    if r > 700.0:
        return 0.0
    return 4.0 / (math.cos(r) + math.cosh(r)) ** 2


# --------------------------------------------------------------------------
# slit planes


def slit_exit_mean(n: int) -> float:
    """Mean exit time from the plane with ``n`` unit radial slits, started at 0."""
    n = int(n)
    if n < 1:
        raise ValueError("need n >= 1")
    if n <= 4:
        return math.inf
    return gamma_fn(0.5 - 2.0 / n) / (2.0 * SQRT_PI * gamma_fn(1.0 - 2.0 / n))


def radial_exit_second_moment(n: int) -> float:
    """``E|W(tau)|^2`` at the slit-plane exit; twice the mean exit time."""
    return 2.0 * slit_exit_mean(n)


# --------------------------------------------------------------------------
# triangles inside a six-slit plane


class TriangleKind(str, Enum):
    A = "A"
    B = "B"
    C = "C"


@dataclass(frozen=True)
class TriangleMetrics:
    kind: TriangleKind
    area: float
    perimeter: float
    inradius: float


def triangle_metrics(kind, a: float, r: float) -> TriangleMetrics:
    """Area, perimeter and inradius of triangle type ``A``, ``B`` or ``C``.

    Two sides have lengths ``a`` and ``r``; the angle between them is 150
    degrees for type A, 30 for B and 90 for C.
    """
    kind = TriangleKind(kind)
    if not (a > 0 and r > 0):
        raise ValueError("a and r must be positive")
    if kind is TriangleKind.C:
        area = 0.5 * a * r
        third = math.sqrt(a * a + r * r)
    else:
        sign = 1.0 if kind is TriangleKind.A else -1.0
        area = 0.25 * a * r
        third = math.sqrt(a * a + r * r + sign * math.sqrt(3.0) * a * r)
    perim = a + r + third
    return TriangleMetrics(kind, area, perim, area / (0.5 * perim))


def constructive_inradius_lower() -> float:
    """``sqrt(pi) / (8 + 4 sqrt 2)``: lower bound on E[r] from the chord triangle."""
    return SQRT_PI / (8.0 + 4.0 * math.sqrt(2.0))


# --------------------------------------------------------------------------
# table of bounds

# Literature inputs that are not derived here
DIAMETER_MEAN_LOWER = 1.856               # lower bound on E[D]
DIAMETER_MEAN_UPPER_SQ = 8.0 * math.log(2.0)  # square of the upper bound on E[D]


@dataclass(frozen=True)
class BoundsRow:
    quantity: str
    lower: float
    upper: float
    provenance: str


@lru_cache(maxsize=1)
def _constants() -> tuple[float, float]:
    return quad.min_range_constant().value, quad.perimeter_second_moment().value


def bonnesen_radius_bounds(p2: float | None = None) -> tuple[float, float]:
    """Lower bound on E[r] and upper bound on E[R] from Bonnesen's inequalities
    plus Jensen, given ``E[P^2]`` (computed if omitted)."""
    if p2 is None:
        p2 = _constants()[1]
    ep = exact_mean_perimeter(1.0)
    gap = math.sqrt(p2 - 2.0 * math.pi ** 2)
    return (ep - gap) / (2.0 * math.pi), (ep + gap) / (2.0 * math.pi)


@lru_cache(maxsize=1)
def _table() -> tuple[BoundsRow, ...]:
    from . import optim  # optim needs this module, so import late

    c_min, p2 = _constants()
    r_lo, R_hi = bonnesen_radius_bounds(p2)
    theta_r_hi = optim.inradius_upper_bound().bound
    return (
        BoundsRow("E[R]", 0.5 * DIAMETER_MEAN_LOWER, R_hi,
                  "D <= 2R with the literature bound E[D] >= 1.856; "
                  "Bonnesen (circumradius form) with Jensen and E[P^2]"),
        BoundsRow("E[r]", r_lo, math.sqrt(2.0) / 2.0,
                  "Bonnesen (inradius form) with Jensen and E[P^2]; "
                  "A >= pi r^2 with Jensen and E[A] = pi/2"),
        BoundsRow("E[Theta^P]", 1.0 / (8.0 * math.pi), 1.0 / (2.0 * math.pi ** 2),
                  "scaling Theta^P = 1/P^2 in law with Jensen and E[P] = sqrt(8 pi); "
                  "Jensen on the Cauchy width integral"),
        BoundsRow("E[Theta^A]", 2.0 / math.pi, 4.0 * math.sqrt(c_min),
                  "scaling Theta^A = 1/A in law with Jensen and E[A] = pi/2; "
                  "two-stage triangle construction, 4 sqrt(E[min range time])"),
        BoundsRow("E[Theta^D]", 1.0 / DIAMETER_MEAN_UPPER_SQ, c_min,
                  "scaling with Jensen and E[D] <= sqrt(8 log 2); "
                  "diameter exceeds 1 once a coordinate range does"),
        BoundsRow("E[Theta^R]", 2.0 * c_min, 4.0 * c_min,
                  "min range time at level sqrt 2 (path still inside a square); "
                  "min range time at level 2"),
        BoundsRow("E[Theta^r]", 2.0, theta_r_hi,
                  "isoperimetric inequality with the Theta^A lower bound; "
                  "min range time plus six-slit exit, optimized over a > 4"),
    )


def bounds_table() -> list[BoundsRow]:
    """The seven (lower, upper) pairs for the circumradius, inradius and inverse-process means."""
    return list(_table())
