"""
The convex hull of one Brownian path
====================================

Sample a planar Brownian motion on [0, 1], take its convex hull and read off
the five functionals the package cares about.
"""
import numpy as np

from bmhull import geom, oracles, sim

cfg = sim.PathConfig(n_steps=10_000, horizon=1.0, master_seed=42)
w = sim.generate_path(cfg, path_index=0)
print(f"{len(w)} sampled points, W(1) = {w[-1].round(4)}")

# %%
# Most of the path is interior; the hull keeps a few dozen vertices.
hull = geom.convex_hull(w)
print(f"hull has {len(hull)} vertices")

P, A = geom.perimeter(hull), geom.area(hull)
D = geom.diameter(hull)
circle = geom.min_enclosing_circle(hull.vertices)
cheb = geom.chebyshev_center(hull)
print(f"perimeter {P:.4f}   area {A:.4f}   diameter {D:.4f}")
print(f"circumradius {circle.radius:.4f} about ({circle.center.x:.4f}, {circle.center.y:.4f})")
print(f"inradius {cheb.radius:.4f} about ({cheb.center.x:.4f}, {cheb.center.y:.4f})")

# %%
# The same numbers come out of the one-call helper used by the simulator.
hf = sim.hull_functionals(w)
assert np.allclose(hf.as_tuple(), (P, A, D, circle.radius, cheb.radius))

# %%
# Every planar convex body satisfies a handful of classical inequalities
# (isoperimetric, Bonnesen, diameter and width sandwiches).  An empty list
# means this hull passes all of them.
r1, r2 = np.ptp(w, axis=0)
print("violated:", oracles.hull_inequality_violations(P, A, D, circle.radius, cheb.radius, r1, r2))

# %%
# The halfplane form of the hull agrees with a winding-number test.
hp = geom.to_halfplanes(hull)
q = np.array([0.1, -0.2])
inside = all(h.contains(q) for h in hp)
print(f"({q[0]}, {q[1]}) inside: {inside} (winding number {oracles.winding_number(hull.vertices, q)})")
