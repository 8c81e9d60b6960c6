"""Monte Carlo engine for the convex hull of planar Brownian motion.

Paths are sampled on the grid ``k / n_steps`` from the origin.  Every path
owns an independent counter-based random stream keyed by
``(master_seed, path_index)``, so results do not depend on how paths are
split among workers, and aggregation always runs in path-index order.

Discrete monitoring biases hull sizes down and hitting times up, with a
leading error of order ``sqrt(dt)``; no bridge correction is attempted.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from . import _kernels as K
from . import _simkernels as SK
from .geom import ConvexPolygon, as_points

BLOCK = 4096
HULL_CAPACITY = 4096


class FunctionalKind(Enum):
    PERIMETER = SK.PERIM
    AREA = SK.AREA
    DIAMETER = SK.DIAM
    CIRCUMRADIUS = SK.CIRC
    INRADIUS = SK.INRAD
    RANGE_MIN = SK.RMIN
    RANGE_X = SK.RX
    RANGE_Y = SK.RY

    @property
    def is_hull(self) -> bool:
        return self.value < SK.N_HULL_KINDS

    @property
    def scaling_exponent(self) -> int:
        """``k`` in ``Theta(y) ~ y**k Theta(1)``: 1 for area, 2 for length-like functionals."""
        return 1 if self is FunctionalKind.AREA else 2


@dataclass(frozen=True)
class PathConfig:
    """Grid and seeding of a batch of paths.

    ``n_steps`` is the number of steps per unit time.  Accuracy of hull
    functionals at ``t = 1`` needs ``n_steps >= 100``; the defaults used by
    the command line are far finer.
    """

    n_steps: int = 10_000
    horizon: float = 5.0
    master_seed: int = 42
    n_paths: int = 10_000

    def __post_init__(self):
        if int(self.n_steps) < 1:
            raise ValueError("n_steps must be >= 1")
        if not (self.horizon > 0 and math.isfinite(self.horizon)):
            raise ValueError("horizon must be positive and finite")
        if int(self.n_paths) < 1:
            raise ValueError("n_paths must be >= 1")
        if not 0 <= int(self.master_seed) < 2**64:
            raise ValueError("master_seed must fit in 64 bits")

    @property
    def dt(self) -> float:
        return 1.0 / self.n_steps

    @property
    def total_steps(self) -> int:
        return int(round(self.horizon * self.n_steps))


def path_rng(master_seed: int, path_index: int) -> np.random.Generator:
    """Independent Philox stream for one path; the key is (path_index, master_seed)."""
    key = np.array([int(path_index), int(master_seed)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _blocks(rng: np.random.Generator) -> Iterable[np.ndarray]:
    while True:
        yield rng.standard_normal((BLOCK, 2))


def generate_path(cfg: PathConfig, path_index: int, n_points: int | None = None) -> np.ndarray:
    """Sampled path ``W(k dt)``, ``k = 0 .. total_steps``, as an array ``(N + 1, 2)``."""
    steps = cfg.total_steps if n_points is None else int(n_points) - 1
    sdt = math.sqrt(cfg.dt)
    out = np.zeros((steps + 1, 2))
    pos = np.zeros(2)
    k = 0
    for incs in _blocks(path_rng(cfg.master_seed, path_index)):
        if k >= steps:
            break
        take = min(BLOCK, steps - k)
        seg = pos + np.cumsum(sdt * incs[:take], axis=0)
        out[k + 1:k + 1 + take] = seg
        pos = seg[-1]
        k += take
    return out


@dataclass(frozen=True)
class HullFunctionals:
    perimeter: float
    area: float
    diameter: float
    circumradius: float
    inradius: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.perimeter, self.area, self.diameter, self.circumradius, self.inradius)


def hull_functionals(points) -> HullFunctionals:
    """All five functionals of the hull of a point set."""
    v = K.monotone_chain(as_points(points))
    return HullFunctionals(*(float(SK.hull_functional(q, v)) for q in range(SK.N_HULL_KINDS)))


@dataclass
class PathState:
    """Running path: position, time, incremental hull and coordinate extremes."""

    dt: float = 1.0
    step: int = 0
    position: np.ndarray = field(default_factory=lambda: np.zeros(2))
    coord_min: np.ndarray = field(default_factory=lambda: np.zeros(2))
    coord_max: np.ndarray = field(default_factory=lambda: np.zeros(2))
    _hull: np.ndarray = field(default_factory=lambda: np.zeros((HULL_CAPACITY, 2)), repr=False)
    _n: int = 1

    @property
    def time(self) -> float:
        return self.step * self.dt

    @property
    def hull(self) -> ConvexPolygon:
        return ConvexPolygon(K.monotone_chain(self._hull[:self._n]))

    def extend(self, points) -> None:
        """Append sampled points (one per time step) to the path."""
        p = as_points(points)
        tmp = np.empty_like(self._hull)
        for x, y in p:
            m = K.insert_point(self._hull, self._n, x, y, tmp)
            if m < 0:
                raise RuntimeError("hull buffer overflow")
            self._n = m
        if len(p):
            self.position = p[-1].copy()
            self.coord_min = np.minimum(self.coord_min, p.min(axis=0))
            self.coord_max = np.maximum(self.coord_max, p.max(axis=0))
            self.step += len(p)


class HittingTime(NamedTuple):
    time: float
    censored: bool

    def __float__(self) -> float:
        return self.time


# --------------------------------------------------------------------------
# single-path samplers


class _Scanner:
    """Reusable buffers for :func:`SK.scan_block`; one instance per worker."""

    def __init__(self):
        self.fstate = np.zeros(6)
        self.istate = np.zeros(2, dtype=np.int64)
        self.hull = np.zeros((HULL_CAPACITY, 2))
        self.tmp = np.zeros((HULL_CAPACITY, 2))
        self.anchor = np.zeros((SK.N_HULL_KINDS, 2))
        self.rho2 = np.zeros(SK.N_HULL_KINDS)
        self.fval = np.zeros(SK.N_HULL_KINDS)
        self.dirty = np.zeros(SK.N_HULL_KINDS, dtype=np.bool_)
        self.levels = np.full(SK.N_KINDS, np.inf)
        self.active = np.zeros(SK.N_KINDS, dtype=np.bool_)
        self.hit = np.full(SK.N_KINDS, -1, dtype=np.int64)
        self.t1 = np.full(SK.T1_SIZE, np.nan)

    def run(self, cfg: PathConfig, path_index: int, levels: Mapping[FunctionalKind, float],
            want_t1: bool = True) -> tuple[np.ndarray, np.ndarray]:
        """Scan one path; returns (t=1 record, hit steps with -1 for censored)."""
        self.levels[:] = np.inf
        self.active[:] = False
        self.hit[:] = -1
        self.t1[:] = np.nan
        for kind, y in levels.items():
            if not y > 0:
                raise ValueError("hitting level must be positive")
            self.levels[kind.value] = y
            self.active[kind.value] = True
        SK.init_state(self.fstate, self.istate, self.hull, self.anchor, self.rho2,
                      self.fval, self.dirty, self.levels)
        max_step = cfg.total_steps
        t1_step = cfg.n_steps if want_t1 else 0
        if t1_step > max_step:
            raise ValueError("horizon must be >= 1 to record functionals at t = 1")
        sdt = math.sqrt(cfg.dt)
        for incs in _blocks(path_rng(cfg.master_seed, path_index)):
            used = SK.scan_block(incs, sdt, self.fstate, self.istate, self.hull, self.tmp,
                                 self.anchor, self.rho2, self.fval, self.dirty, self.levels,
                                 self.active, self.hit, t1_step, self.t1, max_step)
            if used < 0:
                raise RuntimeError("hull buffer overflow")
            if used < BLOCK:
                break
        return self.t1.copy(), self.hit.copy()


def hull_functionals_at_one(cfg: PathConfig, path_index: int) -> HullFunctionals:
    t1, _ = _Scanner().run(cfg, path_index, {}, want_t1=True)
    return HullFunctionals(*map(float, t1[:5]))


def _to_time(cfg: PathConfig, step: int) -> HittingTime:
    if step < 0:
        return HittingTime(cfg.total_steps * cfg.dt, True)
    return HittingTime(step * cfg.dt, False)


def hitting_time(cfg: PathConfig, path_index: int, kind: FunctionalKind, level: float) -> HittingTime:
    """First grid time at which functional ``kind`` of the path exceeds ``level``.

    Reaching the horizon gives a censored result (time = horizon).
    """
    _, hit = _Scanner().run(cfg, path_index, {kind: level}, want_t1=False)
    return _to_time(cfg, int(hit[kind.value]))


def hitting_times(cfg: PathConfig, path_index: int,
                  levels: Mapping[FunctionalKind, float]) -> dict[FunctionalKind, HittingTime]:
    """Several hitting times read off the same path."""
    _, hit = _Scanner().run(cfg, path_index, levels, want_t1=False)
    return {k: _to_time(cfg, int(hit[k.value])) for k in levels}


def min_inverse_range_sample(cfg: PathConfig, path_index: int, level: float) -> HittingTime:
    """First time either coordinate range exceeds ``level``."""
    return hitting_time(cfg, path_index, FunctionalKind.RANGE_MIN, level)


def triangle_chord_inradius(a, b, c) -> float:
    """Inradius of the triangle abc as ``A B sin(theta) / (A + B + C)``.

    ``A = |ab|``, ``B = |bc|``, ``C = |ac|`` and ``theta`` is the angle at b.
    Returns 0 for (nearly) collinear points.
    """
    a, b, c = (np.asarray(p, dtype=float) for p in (a, b, c))
    u = a - b
    w = c - b
    A = math.hypot(*u)
    B = math.hypot(*w)
    C = math.hypot(*(c - a))
    twice_area = abs(u[0] * w[1] - u[1] * w[0])
    if twice_area <= 1e-14 * (A * B + 1e-300):
        return 0.0
    # A B sin(theta) is twice the triangle area
    return twice_area / (A + B + C)


def triangle_chord_sample(cfg: PathConfig, path_index: int) -> float:
    """Inradius of the triangle W(0), W(1/2), W(1) on one path."""
    n = cfg.n_steps
    if n % 2:
        raise ValueError("n_steps must be even so that t = 1/2 is a grid point")
    w = generate_path(cfg, path_index, n_points=n + 1)
    return triangle_chord_inradius(w[0], w[n // 2], w[n])


def slit_exit_sample(cfg: PathConfig, path_index: int, n_slits: int = 6,
                     slit_radius: float = 1.0, kappa: float = 6.0) -> HittingTime:
    """Exit time from the plane with ``n_slits`` radial slits starting at ``slit_radius``.

    Exit is detected by segment/ray intersection between consecutive sampled
    points.  ``1 / n_steps`` is the step used near the slits; away from them
    the step grows like ``(distance / kappa)**2``.
    """
    if n_slits < 1:
        raise ValueError("need at least one slit")
    if not slit_radius > 0:
        raise ValueError("slit radius must be positive")
    ang = 2.0 * np.pi * np.arange(n_slits) / n_slits
    cs, sn = np.cos(ang), np.sin(ang)
    state = np.zeros(4)
    for incs in _blocks(path_rng(cfg.master_seed, path_index)):
        used = SK.slit_block(incs, state, cs, sn, float(slit_radius), cfg.dt, kappa, cfg.horizon)
        if used < BLOCK:
            break
    exited = state[3] != 0.0
    return HittingTime(float(state[2]), not exited)


# --------------------------------------------------------------------------
# batches


class AllCensoredError(ValueError):
    """No sample reached its level before the horizon."""


@dataclass(frozen=True)
class EstimateCI:
    mean: float
    std_error: float
    n: int
    censored_fraction: float = 0.0

    def contains(self, value: float, n_se: float = 3.0) -> bool:
        return abs(self.mean - value) <= n_se * self.std_error


def _split(n: int, parts: int) -> list[range]:
    parts = max(1, min(parts, n))
    edges = np.linspace(0, n, parts + 1).astype(int)
    return [range(a, b) for a, b in zip(edges[:-1], edges[1:])]


def map_paths(cfg: PathConfig, fn: Callable[[PathConfig, int], object], threads: int = 1) -> list:
    """``[fn(cfg, i) for i in range(cfg.n_paths)]``, optionally on worker threads.

    Each worker owns a contiguous block of path indices; output order is
    always by index, so results do not depend on ``threads``.
    """
    if threads <= 1:
        return [fn(cfg, i) for i in range(cfg.n_paths)]
    chunks = _split(cfg.n_paths, threads)
    with ThreadPoolExecutor(max_workers=threads) as ex:
        parts = list(ex.map(lambda r: [fn(cfg, i) for i in r], chunks))
    return [x for part in parts for x in part]


def summarize(values: Sequence[float], censored: Sequence[bool] | None = None) -> EstimateCI:
    """Mean and standard error with compensated summation in the given order."""
    x = [float(v) for v in values]
    n = len(x)
    if n < 2:
        raise ValueError("need at least two samples")
    frac = 0.0
    if censored is not None:
        frac = sum(bool(c) for c in censored) / n
        if frac == 1.0:
            raise AllCensoredError("every sample was censored")
    mean = math.fsum(x) / n
    var = math.fsum((v - mean) ** 2 for v in x) / (n - 1)
    return EstimateCI(mean, math.sqrt(var / n), n, frac)


def estimate(cfg: PathConfig, sampler: Callable[[PathConfig, int], object],
             transform: Callable[[object], float] | None = None, threads: int = 1) -> EstimateCI:
    """Monte Carlo mean of ``transform(sampler(cfg, i))`` over ``cfg.n_paths`` paths.

    Samplers returning :class:`HittingTime` contribute their censoring flag;
    censored samples enter the mean at the horizon value.
    """
    if cfg.n_paths < 2:
        raise ValueError("n_paths must be >= 2")
    raw = map_paths(cfg, sampler, threads)
    censored = [isinstance(r, HittingTime) and r.censored for r in raw]
    if transform is None:
        values = [float(r) for r in raw]
    else:
        values = [float(transform(r)) for r in raw]
    return summarize(values, censored)


# --------------------------------------------------------------------------
# the all-in-one path record used for the summary table

# levels at which each inverse process is simulated; all have means of order
# one time unit, so every row sees a comparable number of grid steps.  The
# results are mapped back to level 1 by Brownian scaling.
TABLE_LEVELS = {
    FunctionalKind.PERIMETER: 4.5,
    FunctionalKind.AREA: 1.5,
    FunctionalKind.DIAMETER: 1.8,
    FunctionalKind.CIRCUMRADIUS: 1.0,
    FunctionalKind.INRADIUS: 0.5,
    FunctionalKind.RANGE_MIN: 1.0,
}

RECORD_FIELDS = ("P", "A", "D", "R", "r", "R1", "R2", "chord",
                 "theta_P", "theta_A", "theta_D", "theta_R", "theta_r", "theta_Rmin")
_THETA_FIELDS = {
    FunctionalKind.PERIMETER: "theta_P",
    FunctionalKind.AREA: "theta_A",
    FunctionalKind.DIAMETER: "theta_D",
    FunctionalKind.CIRCUMRADIUS: "theta_R",
    FunctionalKind.INRADIUS: "theta_r",
    FunctionalKind.RANGE_MIN: "theta_Rmin",
}


@dataclass
class PathRecords:
    """Per-path samples; hitting times already rescaled to level 1."""

    values: dict[str, np.ndarray]
    censored: dict[str, np.ndarray]
    cfg: PathConfig

    def __getitem__(self, name: str) -> np.ndarray:
        return self.values[name]

    def functionals(self, i: int) -> HullFunctionals:
        return HullFunctionals(*(float(self.values[k][i]) for k in ("P", "A", "D", "R", "r")))

    def estimate(self, name: str) -> EstimateCI:
        return summarize(self.values[name], self.censored.get(name))


def simulate_records(cfg: PathConfig, threads: int = 1,
                     levels: Mapping[FunctionalKind, float] = TABLE_LEVELS) -> PathRecords:
    """One path per index carrying every quantity in the summary table.

    For each path: the five functionals, both coordinate ranges and the
    chord-triangle inradius at ``t = 1``, plus the hitting time of each kind
    in ``levels`` divided by ``level ** scaling_exponent``.
    """
    n = cfg.n_steps
    if n % 2:
        raise ValueError("n_steps must be even")

    def work(block: range):
        sc = _Scanner()
        rows = []
        for i in block:
            t1, hit = sc.run(cfg, i, levels, want_t1=True)
            rows.append((t1, hit))
        return rows

    blocks = _split(cfg.n_paths, max(1, threads))
    if threads <= 1:
        parts = [work(b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(work, blocks))
    rows = [r for part in parts for r in part]

    vals = {f: np.empty(cfg.n_paths) for f in RECORD_FIELDS}
    cens = {}
    for name in _THETA_FIELDS.values():
        cens[name] = np.zeros(cfg.n_paths, dtype=bool)
    for i, (t1, hit) in enumerate(rows):
        for j, f in enumerate(("P", "A", "D", "R", "r", "R1", "R2")):
            vals[f][i] = t1[j]
        vals["chord"][i] = triangle_chord_inradius((0.0, 0.0), t1[7:9], t1[9:11])
        for kind, name in _THETA_FIELDS.items():
            if kind not in levels:
                vals[name][i] = np.nan
                continue
            ht = _to_time(cfg, int(hit[kind.value]))
            vals[name][i] = ht.time / levels[kind] ** kind.scaling_exponent
            cens[name][i] = ht.censored
    return PathRecords(vals, cens, cfg)
