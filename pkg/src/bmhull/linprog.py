"""Small dense linear programs: maximize ``c . z`` subject to ``G z <= h``.

Variables are free (unrestricted in sign); put sign constraints into ``G``
as ordinary rows.  The solver is a two-phase tableau simplex with Bland's
rule, which is plenty for the three-variable Chebyshev-centre problems
this package generates.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels as K


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


_STATUS = {K.LP_OPTIMAL: LPStatus.OPTIMAL,
           K.LP_INFEASIBLE: LPStatus.INFEASIBLE,
           K.LP_UNBOUNDED: LPStatus.UNBOUNDED}


@dataclass(frozen=True)
class LinearProgram:
    objective: np.ndarray
    constraints: np.ndarray
    bounds: np.ndarray

    def __post_init__(self):
        c = np.ascontiguousarray(self.objective, dtype=float).ravel()
        G = np.ascontiguousarray(self.constraints, dtype=float)
        h = np.ascontiguousarray(self.bounds, dtype=float).ravel()
        if G.ndim != 2 or G.shape != (h.size, c.size):
            raise ValueError(f"shape mismatch: G {G.shape}, h {h.shape}, c {c.shape}")
        if c.size < 1 or h.size < 1:
            raise ValueError("need at least one variable and one constraint")
        if not (np.isfinite(c).all() and np.isfinite(G).all() and np.isfinite(h).all()):
            raise ValueError("LP data must be finite")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "constraints", G)
        object.__setattr__(self, "bounds", h)

    @property
    def n_vars(self) -> int:
        return self.objective.size


@dataclass(frozen=True)
class LPSolution:
    status: LPStatus
    z: np.ndarray | None
    objective_value: float

    @property
    def optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


def solve(lp: LinearProgram) -> LPSolution:
    """Solve ``lp``; infeasible or unbounded problems are reported via ``status``."""
    code, z, obj = K.simplex(lp.objective, lp.constraints, lp.bounds)
    status = _STATUS[int(code)]
    if status is not LPStatus.OPTIMAL:
        return LPSolution(status, None, float(obj))
    return LPSolution(status, np.asarray(z), float(obj))


def max_violation(lp: LinearProgram, z) -> float:
    """Largest relative constraint violation ``(g.z - h) / (1 + |h|)`` (<= 0 when feasible)."""
    r = lp.constraints @ np.asarray(z, dtype=float) - lp.bounds
    return float(np.max(r / (1.0 + np.abs(lp.bounds))))
