"""
Density functions of a polynomial ring and a plane quartic
==========================================================

The level-n density of a graded pair (R, I) records the lengths of the
graded pieces of R/I^[q], q = p^n, rescaled onto the grid 1/q.  Everything
below is exact: values are Fractions, lengths are ranks over F_p.
"""

# %%
from fractions import Fraction

import numpy as np

from hkdensity import density_function, ehk_estimate, integrate, polynomial_ring, sup_norm_diff
from hkdensity.polynomial import Polynomial

# %% [markdown]
# For k[x, y] with the maximal ideal the density is a discrete tent.

# %%
plane = polynomial_ring(2)
fib = plane.fiber(2)
for n in (1, 2, 3):
    f = density_function(fib, n)
    print(n, [str(v) for v in f.values], "integral", integrate(f))

# %% [markdown]
# The values are exact; convert to floats only for display.

# %%
f = density_function(plane.fiber(3), 2)
xs = np.array([j / f.q for j, _ in f.items()])
ys = np.array([float(v) for _, v in f.items()])
print(np.round(np.c_[xs, ys], 3))

# %% [markdown]
# The Fermat quartic x^4 + y^4 + z^4: successive levels get closer, and the
# e_HK estimate equals the integral of the density.

# %%
quartic = polynomial_ring(3, relations=[Polynomial.parse("x^4 + y^4 + z^4")])
for p in (3, 5, 7):
    fib = quartic.fiber(p)
    f1, f2 = density_function(fib, 1), density_function(fib, 2)
    print(p, "||f1 - f2|| =", sup_norm_diff(f1, f2), " e_HK(1) =", ehk_estimate(fib, 1),
          " e_HK(2) =", ehk_estimate(fib, 2))

# %%
# the tail view keeps x >= 1 only
tail = density_function(quartic.fiber(5), 1, "tail")
print(tail.offset, tail.values[:4], integrate(tail) == Fraction(sum(tail.values), tail.q))
