"""Planar computational geometry on point sets and convex polygons.

Points are handled as float arrays of shape ``(n, 2)``; the small result
types below are what the rest of the package passes around.  The heavy
lifting is done by compiled kernels in :mod:`bmhull._kernels`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels as K


class Point2(NamedTuple):
    x: float
    y: float


class Circle(NamedTuple):
    center: Point2
    radius: float


class HalfPlane(NamedTuple):
    """Constraint ``normal . p <= offset``; ``normal`` has unit length."""

    normal: Point2
    offset: float

    def contains(self, p, tol: float = 0.0) -> bool:
        return self.normal.x * p[0] + self.normal.y * p[1] <= self.offset + tol


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon, vertices counter-clockwise.

    The first vertex is the lexicographic minimum.  Degenerate hulls with
    0, 1 or 2 vertices are allowed; see :attr:`is_degenerate`.
    """

    vertices: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.ascontiguousarray(self.vertices, dtype=float).reshape(-1, 2)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    def __len__(self) -> int:
        return self.vertices.shape[0]

    @property
    def is_degenerate(self) -> bool:
        return len(self) < 3

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConvexPolygon):
            return NotImplemented
        return np.array_equal(self.vertices, other.vertices)

    def __hash__(self):
        return hash(self.vertices.tobytes())

    def __repr__(self) -> str:
        return f"ConvexPolygon(n_vertices={len(self)})"


def as_points(points) -> np.ndarray:
    """Validate and convert to a contiguous ``(n, 2)`` float array."""
    p = np.ascontiguousarray(points, dtype=float)
    if p.ndim == 1 and p.size == 2:
        p = p.reshape(1, 2)
    if p.ndim != 2 or p.shape[1] != 2:
        raise ValueError(f"expected points of shape (n, 2), got {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError("points must be finite")
    return p


def convex_hull(points) -> ConvexPolygon:
    """Convex hull by Andrew's monotone chain.

    Collinear boundary points are dropped, so every returned vertex is a
    strict turn.  Raises ``ValueError`` for empty input.
    """
    p = as_points(points)
    if p.shape[0] == 0:
        raise ValueError("convex hull of an empty point set")
    return ConvexPolygon(K.monotone_chain(p))


def perimeter(poly: ConvexPolygon) -> float:
    """Boundary length; a 2-vertex hull counts its segment twice."""
    return float(K.perimeter(poly.vertices))


def area(poly: ConvexPolygon) -> float:
    return float(K.area(poly.vertices))


def diameter(poly: ConvexPolygon) -> float:
    """Largest vertex-to-vertex distance, by rotating calipers."""
    return float(K.diameter(poly.vertices))


def min_enclosing_circle(points) -> Circle:
    """Smallest circle containing all points (randomized incremental, expected O(n))."""
    p = as_points(points)
    if p.shape[0] == 0:
        raise ValueError("enclosing circle of an empty point set")
    cx, cy, r = K.min_enclosing_circle(p)
    return Circle(Point2(float(cx), float(cy)), float(r))


def to_halfplanes(poly: ConvexPolygon) -> list[HalfPlane]:
    """One unit-normal half-plane per edge; the polygon is their intersection."""
    v = poly.vertices
    h = len(v)
    if h < 3:
        raise ValueError("polygon with fewer than 3 vertices has no interior")
    out = []
    for i in range(h):
        a, b = v[i], v[(i + 1) % h]
        ex, ey = b - a
        L = float(np.hypot(ex, ey))
        n = Point2(ey / L, -ex / L)
        out.append(HalfPlane(n, n.x * a[0] + n.y * a[1]))
    return out


def chebyshev_center(poly: ConvexPolygon) -> Circle:
    """Largest inscribed circle, found by the LP

        maximize rho  s.t.  a_i . x + rho * |a_i| <= b_i,  rho >= 0.

    The centre need not be unique (think of a long rectangle) but the
    radius always is.
    """
    if len(poly) < 3 or K.area(poly.vertices) <= 0.0:
        raise ValueError("Chebyshev centre needs a polygon with positive area")
    cx, cy, r = K.chebyshev_lp(poly.vertices)
    if not np.isfinite(cx):
        raise RuntimeError("Chebyshev LP failed to reach an optimum")
    return Circle(Point2(float(cx), float(cy)), float(r))


def inradius(poly: ConvexPolygon) -> float:
    """Inradius, 0 for degenerate hulls."""
    if len(poly) < 3:
        return 0.0
    return float(K.inradius(poly.vertices))


def circumradius(poly: ConvexPolygon) -> float:
    return float(K.circumradius(poly.vertices))
