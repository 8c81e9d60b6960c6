"""
Monte Carlo against the exact means
===================================

E[P(1)] = sqrt(8 pi) and E[A(1)] = pi / 2 are known in closed form.  A
sampled path sees only its grid points, so its hull is slightly too small.
For a Gaussian random walk the exact discrete means are also known, which
separates the discretization bias from Monte Carlo noise.
"""
import math

from bmhull import analytic, oracles, sim

exact_P = analytic.exact_mean_perimeter(1.0)
exact_A = analytic.exact_mean_area(1.0)

for n_steps in (100, 1_000, 10_000):
    cfg = sim.PathConfig(n_steps=n_steps, horizon=1.0, master_seed=1, n_paths=2_000)
    P = sim.estimate(cfg, sim.hull_functionals_at_one, lambda hf: hf.perimeter)
    A = sim.estimate(cfg, sim.hull_functionals_at_one, lambda hf: hf.area)
    walk_P = oracles.walk_mean_perimeter(n_steps, cfg.dt)
    walk_A = oracles.walk_mean_area(n_steps, cfg.dt)
    print(f"n_steps={n_steps:>6}:  P {P.mean:.4f} +/- {P.std_error:.4f} (walk {walk_P:.4f}, "
          f"bias {walk_P / exact_P - 1:+.2%})   A {A.mean:.4f} +/- {A.std_error:.4f} "
          f"(walk {walk_A:.4f}, bias {walk_A / exact_A - 1:+.2%})")

print(f"continuum: P {exact_P:.4f}, A {exact_A:.4f}")

# %%
# The perimeter bias decays like 1/sqrt(n); the area bias is larger at the
# same n, which is why area needs the finer grids.
for n in (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6):
    bp = oracles.walk_mean_perimeter(n, 1 / n) / exact_P - 1
    ba = oracles.walk_mean_area(n, 1 / n) / exact_A - 1
    print(f"n = 1e{int(math.log10(n))}: perimeter bias {bp:+.3%}, area bias {ba:+.3%}")
