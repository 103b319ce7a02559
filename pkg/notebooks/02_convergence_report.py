"""
Convergence reports across primes
=================================

``convergence_report`` tabulates ||f_n - f_{n+1}|| and the e_HK estimates
for several primes, the scaled norms ||f_n - f_{n+1}|| * p^(n-d+2), and a
least-squares decay exponent per prime.
"""

# %%
from hkdensity import convergence_report, polynomial_ring
from hkdensity.polynomial import Polynomial

# %%
report = convergence_report(polynomial_ring(2), [2, 3, 5], 3)
for row in report.rows:
    print(row.p, row.n, row.norm, row.scaled, row.ehk_n)
print("decay exponents", report.decay_exponents)
print("scaled norms non-increasing", report.non_increasing)

# %% [markdown]
# A ring where one prime is bad: 3x vanishes mod 3, so that prime is
# recorded as a failure and the others proceed.

# %%
gens = [Polynomial.parse("3*x", ("x", "y")), Polynomial.parse("y", ("x", "y"))]
report = convergence_report(polynomial_ring(2, generators=gens), [2, 3, 5], 2)
print(report.failures)

# %%
quartic = polynomial_ring(3, relations=[Polynomial.parse("x^4 + y^4 + z^4")])
report = convergence_report(quartic, [5, 7], 2)
for row in report.rows:
    print(row.p, row.norm, float(row.norm))
for entry in report.cross_prime:
    print(entry)
