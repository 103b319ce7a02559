"""
Segre products
==============

At finite level the density of a Segre product is F_R g + F_S f - f g,
where F is the rescaled Hilbert function.  We check this against the
direct presentation k[w, x, y, z]/(wz - xy) of k[x, y] # k[u, v], then
compare with the limit built from the tent.
"""

# %%
from fractions import Fraction

from hkdensity import density_function, polynomial_ring
from hkdensity.piecewise import Piece, PiecewisePolynomial
from hkdensity.segre import (
    HSDensity,
    hs_partial,
    segre_density_finite,
    segre_density_limit,
    segre_of_polynomial_rings,
)

# %%
plane = polynomial_ring(2)
direct_ring = segre_of_polynomial_rings()
for p, n in [(2, 1), (2, 2), (3, 2)]:
    fib = plane.fiber(p)
    span = fib.support_bound(p**n)
    f, F = density_function(fib, n), hs_partial(fib, n, span)
    combined = segre_density_finite(f, F, f, F)
    direct = density_function(direct_ring.fiber(p), n)
    print(p, n, combined.values == direct.values)

# %% [markdown]
# The limit: with the tent on [0, 2] for both factors the product density
# is x^2 on [0, 1) and -4 + 8x - 3x^2 on [1, 2); its integral 4/3 is the
# Hilbert-Kunz multiplicity of the quadric cone.

# %%
tent = PiecewisePolynomial([Piece(0, 1, (0, 1)), Piece(1, 2, (2, -1))])
limit = segre_density_limit(tent, HSDensity(1, 2), tent, HSDensity(1, 2))
print(limit, limit.integrate())

# %%
# finite levels approach the limit at rate 4/q - 3/q^2
for p, n in [(2, 2), (3, 2), (5, 1)]:
    f = density_function(direct_ring.fiber(p), n)
    q = p**n
    print(q, max(abs(f.at_index(j) - limit(Fraction(j, q))) for j in range(3 * q)))
