"""
Exit from a radial slit plane
=============================

Remove n rays {arg z = 2 pi k / n, |z| >= 1} from the plane and start a
Brownian motion at 0.  The mean exit time is finite only for n >= 5.
"""
from bmhull import analytic, sim

for n in (5, 6, 8, 12):
    print(f"n = {n:>2}: exact mean exit time {analytic.slit_exit_mean(n):.6f}")
print(f"n =  4: {analytic.slit_exit_mean(4)}")

# %%
# The simulator takes big steps far from the slits and 1/n_steps close to
# them, and detects a crossing on the segment between consecutive points.
cfg = sim.PathConfig(n_steps=100_000, horizon=1e4, master_seed=5, n_paths=2_000)
for n in (6, 8):
    est = sim.estimate(cfg, lambda c, i: sim.slit_exit_sample(c, i, n_slits=n))
    print(f"n = {n}: simulated {est.mean:.4f} +/- {est.std_error:.4f}, "
          f"exact {analytic.slit_exit_mean(n):.4f}")

# %%
# The exit time from the six-slit plane has a tail like t**-1.5, so its
# variance is infinite and the standard error above is only indicative.
# Brownian scaling still holds: doubling the slit radius multiplies the mean by four.
est = sim.estimate(cfg, lambda c, i: sim.slit_exit_sample(c, i, n_slits=8, slit_radius=2.0))
print(f"n = 8, radius 2: {est.mean:.4f}, four times exact {4 * analytic.slit_exit_mean(8):.4f}")
