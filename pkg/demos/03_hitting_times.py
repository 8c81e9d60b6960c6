"""
Inverse processes
=================

Theta^X(y) is the first time the hull functional X exceeds y.  Since
X(t) scales like sqrt(t) for lengths and like t for area, Theta^X(y) has
the law of y**2 Theta^X(1) (lengths) or y Theta^X(1) (area).
"""
from bmhull import quad, sim
from bmhull.sim import FunctionalKind as FK

cfg = sim.PathConfig(n_steps=4_000, horizon=5.0, master_seed=3, n_paths=1_000)

for kind, level in ((FK.PERIMETER, 4.5), (FK.AREA, 1.5), (FK.DIAMETER, 1.8), (FK.CIRCUMRADIUS, 1.0)):
    est = sim.estimate(cfg, lambda c, i: sim.hitting_time(c, i, kind, level))
    scale = level ** kind.scaling_exponent
    print(f"{kind.name.lower():>13}: Theta({level}) = {est.mean:.4f}, rescaled to level 1: "
          f"{est.mean / scale:.4f} +/- {est.std_error / scale:.4f}")

# %%
# One path can feed several hitting times at once; the inradius is the
# expensive one because each hull change costs a small linear program.
levels = {FK.AREA: 1.0, FK.INRADIUS: 0.5, FK.RANGE_MIN: 1.0}
print(sim.hitting_times(cfg, 0, levels))

# %%
# The first time either coordinate range passes 1 has a closed-form mean.
est = sim.estimate(cfg, lambda c, i: sim.min_inverse_range_sample(c, i, 1.0))
print(f"min range time {est.mean:.4f} +/- {est.std_error:.4f}, "
      f"exact {quad.min_range_constant().value:.6f} (grid bias is upward)")
