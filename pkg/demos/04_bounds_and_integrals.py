"""
Analytic bounds
===============

The lower and upper bounds on the seven means come from Jensen's inequality,
Bonnesen's inequalities and a couple of explicit constructions.  Two inputs
are integrals that need care in double precision.
"""
import math

from bmhull import analytic, optim, quad

c = quad.min_range_constant()
p2 = quad.perimeter_second_moment()
print(f"E[min of two range times] = {c.value:.10f}  (+/- {c.abs_error_estimate:.1e})")
print(f"E[P(1)^2]                 = {p2.value:.8f}  (+/- {p2.abs_error_estimate:.1e})")
print(f"Jensen: E[P]^2 = 8 pi = {8 * math.pi:.4f} < E[P^2]")

# %%
# Near t = 0 the min-range integrand is 1 - 4/(cos t + cosh t)^2 over t^3,
# a difference of two numbers within 1e-17 of each other.  The series
# branch keeps full accuracy there.
t = 1e-3
print(f"series {quad._lemma_series(t):.15e}  vs  naive {quad._lemma_direct(t):.15e}")

# %%
# The inradius-time upper bound is a one-dimensional minimization.
res = optim.inradius_upper_bound()
print(f"E[Theta^r] <= {res.bound:.4f}, attained at a = {res.a_star:.4f}, r = {res.r_star:.4f}")

print()
for row in analytic.bounds_table():
    print(f"{row.quantity:<12} [{row.lower:.6g}, {row.upper:.6g}]")
