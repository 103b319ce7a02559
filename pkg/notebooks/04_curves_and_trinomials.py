"""
Curves: densities from HN data, Segre of two curves, trinomials
===============================================================

For a plane curve the density on [1, oo) is piecewise linear and is read off
the Harder-Narasimhan slopes of the syzygy bundle.  Refining a block (as a
Frobenius pull-back can) never lowers the density.
"""

# %%
from fractions import Fraction

from hkdensity.curvehn import (
    HNData,
    RefinedHNData,
    classify_trinomial,
    congruence_agreement,
    density_from_hn,
    ehk_inf_segre_curves,
    finf_from_hn,
    semistable_hn,
)

# %%
base = semistable_hn(4, 2)          # rank 2, slope -2 on a quartic
print(finf_from_hn(base), finf_from_hn(base).integrate())

# refine the single block into slopes -1 and -3 (same rank and degree)
refined = RefinedHNData(base, (((Fraction(-1), 1), (Fraction(-3), 1)),))
f = density_from_hn(refined)
print(f, f.integrate())

# %%
unstable = HNData(4, ((Fraction(-1), 1), (Fraction(-3), 1)))
print(finf_from_hn(unstable))

# %% [markdown]
# Segre product of two curves with semistable syzygy bundles.

# %%
for args in [(3, 3, 2, 2), (4, 4, 2, 2), (4, 5, 3, 2)]:
    print(args, ehk_inf_segre_curves(*args))

# %% [markdown]
# Plane trinomials and the primes where their reductions behave well.

# %%
for h in ["x^4+y^4+z^4", "x^3*y+y^3*z+z^3*x", "x*y^3+y^4+z^4"]:
    c = classify_trinomial(h)
    print(h, c.kind, c.lambda_h)

lams = [classify_trinomial("x^3*y+y^3*z+z^3*x").lambda_h, classify_trinomial("x^4+y^4+z^4").lambda_h]
print([p for p in range(3, 200) if all(p % k for k in range(2, p)) and congruence_agreement(p, lams)])
