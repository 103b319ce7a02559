"""
Hilbert polynomials in the binomial basis
=========================================

A Hilbert polynomial of degree D is stored by its coefficients in the basis
C(m+D, D), C(m+D-1, D-1), ... with alternating signs.  The Frobenius
cokernel polynomial m -> hp(mp) - p^D hp(m) drops one degree.
"""

# %%
from hkdensity.gradedring import hilbert_data, polynomial_ring
from hkdensity.hilbertpoly import BinomialPolynomial, cokernel_hp, from_values, twist_difference_hp
from hkdensity.polynomial import Polynomial

# %%
hp = from_values([4 * m - 2 for m in range(4)], 1)   # plane quartic: 4(m+1) - 6
print(hp, [hp(m) for m in range(5)])
for p in (2, 3, 5, 7):
    print(p, cokernel_hp(hp, p))

# %%
print(twist_difference_hp(hp, 3), twist_difference_hp(BinomialPolynomial(1, (1, 0)), 1))

# %% [markdown]
# Hilbert data fitted from computed Hilbert functions.

# %%
print(hilbert_data(polynomial_ring(3).fiber(5)))
quartic = polynomial_ring(3, relations=[Polynomial.parse("x^4 + y^4 + z^4")])
print(hilbert_data(quartic.fiber(5)))
