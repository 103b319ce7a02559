"""Density functions of Segre products.

For standard graded ``R, S`` with ideals ``I, J`` the degree-``j`` piece of
``(R#S)/(I#J)^[q]`` has length

    len(R_j) len(S_j) - (len(R_j) - len(R/I^[q])_j) (len(S_j) - len(S/J^[q])_j)

so the level-``n`` density of the product is ``F_R g + F_S f - f g``, where
``F`` is the normalized Hilbert function.  The same expression combines the
limit densities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .densityfn import StepFunction
from .errors import MismatchedLevel
from .gradedring import GradedPresentation, HilbertData, ModPFiber, hilbert_function_prefix
from .piecewise import Piece, PiecewisePolynomial
from .polynomial import Polynomial


@dataclass(frozen=True)
class HSDensity:
    """``x -> e0 * x^(d-1) / (d-1)!`` for ``x >= 0``, zero for ``x < 0``."""

    e0: int
    d: int

    def __post_init__(self):
        if self.e0 < 1 or self.d < 1:
            raise ValueError("e0 and d must be positive")

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return (Fraction(0),) * (self.d - 1) + (Fraction(self.e0, factorial(self.d - 1)),)

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if x < 0:
            return Fraction(0)
        return Fraction(self.e0, factorial(self.d - 1)) * x ** (self.d - 1)

    def on(self, lo, hi) -> PiecewisePolynomial:
        return PiecewisePolynomial.single(max(Fraction(lo), Fraction(0)), hi, self.coeffs)


def hs_density(hd: HilbertData) -> HSDensity:
    return HSDensity(hd.e0, hd.d)


def hs_partial(fiber: ModPFiber, n: int, up_to: int | None = None) -> StepFunction:
    """Step function ``len(R_j) / q^(d-1)`` for ``0 <= j < up_to``.

    ``up_to`` defaults to the support bound ``n0*mu*q`` of the density.
    """
    q = fiber.p**n
    if up_to is None:
        up_to = fiber.support_bound(q)
    scale = q ** (fiber.d - 1)
    hf = hilbert_function_prefix(fiber, up_to - 1) if up_to > 0 else []
    meta = {"p": fiber.p, "n": n, "d": fiber.d, "ring_hash": fiber.presentation.content_hash(), "view": "full"}
    return StepFunction(q, tuple(Fraction(v, scale) for v in hf), 0, meta)


def _level(f: StepFunction) -> tuple:
    return (f.q, f.meta.get("p"), f.meta.get("n"))


def segre_density_finite(fR: StepFunction, FR: StepFunction, fS: StepFunction, FS: StepFunction) -> StepFunction:
    """Entrywise ``F_R g + F_S f - f g`` at a common level ``(p, n)``."""
    levels = {_level(x) for x in (fR, FR, fS, FS)}
    qs = {lv[0] for lv in levels}
    ps = {lv[1] for lv in levels if lv[1] is not None}
    ns = {lv[2] for lv in levels if lv[2] is not None}
    if len(qs) != 1 or len(ps) > 1 or len(ns) > 1:
        raise MismatchedLevel(f"inputs computed at different levels: {sorted(map(str, levels))}")
    if any(x.offset for x in (fR, FR, fS, FS)):
        raise ValueError("segre_density_finite expects full-view step functions")
    (q,) = qs
    end = max(fR.end, fS.end)
    values = []
    for j in range(end):
        f, g = fR.at_index(j), fS.at_index(j)
        values.append(FR.at_index(j) * g + FS.at_index(j) * f - f * g)
    meta = {"q": q, "view": "full"}
    if ps:
        meta["p"] = ps.pop()
    if ns:
        meta["n"] = ns.pop()
    if "d" in fR.meta and "d" in fS.meta:
        meta["d"] = fR.meta["d"] + fS.meta["d"] - 1
    return StepFunction(q, tuple(values), 0, meta)


def segre_density_limit(fR: PiecewisePolynomial, FR: HSDensity, fS: PiecewisePolynomial,
                        FS: HSDensity) -> PiecewisePolynomial:
    """``F_S f + F_R g - f g`` as an exact piecewise polynomial.

    Off the union of the supports of ``f`` and ``g`` every term vanishes, so
    ``F_R`` and ``F_S`` only need to be materialized up to the last breakpoint.
    """
    hi = max(fR.support_end, fS.support_end)
    if hi <= 0:
        return PiecewisePolynomial.zero()
    FRp, FSp = FR.on(0, hi), FS.on(0, hi)
    return (FSp * fR + FRp * fS - fR * fS).canonical()


def with_hs_head(f: PiecewisePolynomial, hs: HSDensity, start=1) -> PiecewisePolynomial:
    """Extend a density given on ``[start, oo)`` by ``F`` on ``[0, start)``."""
    start = Fraction(start)
    head = PiecewisePolynomial([Piece(0, start, hs.coeffs)])
    return (head + f).canonical()


def has_linear_generator(presentation: GradedPresentation) -> bool:
    """Whether some ideal generator has degree one.

    This is a syntactic stand-in for ``I`` meeting ``R_1`` nontrivially: it
    is sufficient but not necessary (a linear form can also be a combination
    of higher-degree generators only modulo the relations, which is not
    checked).
    """
    return any(g.degree == 1 for g in presentation.generators)


def segre_of_polynomial_rings(m: int = 2, k: int = 2) -> GradedPresentation:
    """``k[x_0..x_{m-1}] # k[y_0..y_{k-1}]`` as a quotient by 2x2 minors.

    Variable ``z_{a,b}`` stands for ``x_a y_b``; relations are
    ``z_{a,b} z_{c,e} - z_{a,e} z_{c,b}``.  The ideal is the maximal one.
    """
    if (m, k) == (2, 2):
        names = ("w", "x", "y", "z")
    else:
        names = tuple(f"z{a}{b}" for a in range(m) for b in range(k))
    n = m * k

    def var(a: int, b: int) -> int:
        return a * k + b

    rels = []
    for a in range(m):
        for c in range(a + 1, m):
            for b in range(k):
                for e in range(b + 1, k):
                    t1 = [0] * n
                    t1[var(a, b)] += 1
                    t1[var(c, e)] += 1
                    t2 = [0] * n
                    t2[var(a, e)] += 1
                    t2[var(c, b)] += 1
                    rels.append(Polynomial(n, {tuple(t1): 1, tuple(t2): -1}))
    gens = tuple(Polynomial.variable(i, n) for i in range(n))
    return GradedPresentation(n, tuple(rels), gens, m + k - 1, names)
