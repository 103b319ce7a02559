"""Closed forms for curves: densities from Harder-Narasimhan slope data,
the Segre-of-two-curves e_HK limit, and plane trinomial invariants.

All slopes here are *normalized* (divided by the Frobenius power that was
pulled back), so a block of rank ``r`` and slope ``a`` contributes
``r * max(0, -a - d(x-1))`` to the density on ``x >= 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import InvalidHN, NotTrinomial, PreconditionViolated, Unmatched
from .piecewise import Piece, PiecewisePolynomial
from .polynomial import Polynomial
from .segre import HSDensity, segre_density_limit


@dataclass(frozen=True)
class HNData:
    """Slopes ``mu_1 > mu_2 > ...`` with ranks, on a curve of degree ``d``."""

    d: int
    blocks: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        blocks = tuple((Fraction(mu), int(r)) for mu, r in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if self.d < 1:
            raise InvalidHN("polarization degree must be positive")
        for mu, r in blocks:
            if r < 1:
                raise InvalidHN(f"rank {r} is not positive")
            if mu > 0:
                raise InvalidHN(f"slope {mu} is positive")
        for (a, _), (b, _) in zip(blocks, blocks[1:]):
            if not a > b:
                raise InvalidHN(f"slopes must strictly decrease, got {a} then {b}")

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.blocks)

    @property
    def degree_sum(self) -> Fraction:
        return sum((mu * r for mu, r in self.blocks), Fraction(0))


@dataclass(frozen=True)
class RefinedHNData:
    """HN data plus, per block, the normalized slopes ``a_ij`` and ranks of the
    Frobenius pull-back's filtration of that block.

    A block's refinement has strictly decreasing slopes straddling the block
    slope and the same total rank and degree.
    """

    base: HNData
    refinements: tuple[tuple[tuple[Fraction, int], ...], ...]

    def __post_init__(self):
        refs = tuple(tuple((Fraction(a), int(r)) for a, r in block) for block in self.refinements)
        object.__setattr__(self, "refinements", refs)
        if len(refs) != len(self.base.blocks):
            raise InvalidHN("one refinement per HN block is required")
        for (mu, r), block in zip(self.base.blocks, refs):
            if not block:
                raise InvalidHN("empty refinement")
            if any(rr < 1 for _, rr in block):
                raise InvalidHN("refinement ranks must be positive")
            if any(a > 0 for a, _ in block):
                raise InvalidHN("refinement slopes must be nonpositive")
            if sum(rr for _, rr in block) != r:
                raise InvalidHN(f"refinement ranks do not add up to {r}")
            for (a, _), (b, _) in zip(block, block[1:]):
                if not a > b:
                    raise InvalidHN("refinement slopes must strictly decrease")
            if not block[0][0] >= mu >= block[-1][0]:
                raise InvalidHN(f"refinement slopes do not straddle {mu}")
            if sum(a * rr for a, rr in block) != mu * r:
                raise InvalidHN(f"refinement degree differs from block degree {mu * r}")

    @classmethod
    def trivial(cls, base: HNData) -> "RefinedHNData":
        return cls(base, tuple(((mu, r),) for mu, r in base.blocks))

    @property
    def d(self) -> int:
        return self.base.d

    def pieces(self) -> list[tuple[Fraction, int]]:
        return [piece for block in self.refinements for piece in block]


def slope_density(pieces: Iterable[tuple[Fraction, int]], d: int) -> PiecewisePolynomial:
    """``x -> sum r * max(0, -a - d(x-1))`` on ``[1, oo)``."""
    pieces = [(Fraction(a), r) for a, r in pieces]
    ends = sorted({1 - a / d for a, _ in pieces} | {Fraction(1)})
    out = []
    for lo, hi in zip(ends, ends[1:]):
        active = [(a, r) for a, r in pieces if 1 - a / d >= hi]
        c0 = sum((r * (d - a) for a, r in active), Fraction(0))
        c1 = -d * sum(r for _, r in active)
        out.append(Piece(lo, hi, (c0, c1)))
    return PiecewisePolynomial(out).canonical()


def density_from_hn(data: RefinedHNData) -> PiecewisePolynomial:
    """Density on ``[1, oo)`` of a pair whose syzygy bundle has this refined HN data."""
    return slope_density(data.pieces(), data.d)


def finf_from_hn(data: HNData) -> PiecewisePolynomial:
    """Characteristic-zero limit density on ``[1, oo)`` from plain HN data."""
    return slope_density(data.blocks, data.d)


def semistable_hn(d: int, r: int) -> HNData:
    """Syzygy bundle of rank ``r`` and degree ``-d`` that is semistable."""
    return HNData(d, ((Fraction(-d, r), r),))


def ehk_inf_segre_curves(d1: int, d2: int, r: int, s: int) -> Fraction:
    """Closed-form e_HK limit of the Segre product of two curves of degrees
    ``d1, d2`` whose syzygy bundles are semistable of ranks ``r >= s``."""
    if r < s or s < 1:
        raise PreconditionViolated(f"need r >= s >= 1, got r={r}, s={s}")
    if d1 < 1 or d2 < 1:
        raise PreconditionViolated("curve degrees must be positive")
    r_, s_ = Fraction(r), Fraction(s)
    return Fraction(d1 * d2, 3) + d1 * d2 * (1 / (2 * s_) + 1 / (6 * s_**2) + 1 / (6 * r_**2) + s_ / (6 * r_**2))


def ehk_inf_segre_integral(d1: int, d2: int, r: int, s: int) -> Fraction:
    """Same quantity by integrating the Segre composition of the two limit densities."""
    f = finf_from_hn(semistable_hn(d1, r))
    g = finf_from_hn(semistable_hn(d2, s))
    combined = segre_density_limit(f, HSDensity(d1, 2), g, HSDensity(d2, 2))
    return Fraction(d1 * d2, 3) + combined.integrate(1, None)


# plane trinomials ---------------------------------------------------------

@dataclass(frozen=True)
class TrinomialClassification:
    kind: str  # "irregular", "regular-a" or "regular-b"
    d: int
    lambda_h: int
    alpha: int | None = None
    beta: int | None = None
    nu: int | None = None
    lam: int | None = None
    permutation: tuple[int, ...] | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "d": self.d,
            "alpha": self.alpha,
            "beta": self.beta,
            "nu": self.nu,
            "lambda": self.lam,
            "lambda_h": self.lambda_h,
        }


def _coordinate_multiplicity(exps: Sequence[tuple[int, ...]], i: int, d: int) -> int | None:
    """Multiplicity of the curve at the ``i``-th coordinate point, None if off the curve."""
    if any(e[i] == d for e in exps):
        return None
    return min(d - e[i] for e in exps)


def _match_a(mons: list[tuple[int, int, int]], d: int):
    def find(cond):
        hits = [m for m in mons if cond(m)]
        return hits[0] if len(hits) == 1 else None

    # x^a1 y^a2, y^b1 z^b2, z^c1 x^c2 with a1, b1, c1 > d/2 and every monomial in two variables
    A = find(lambda m: m[2] == 0 and 2 * m[0] > d and m[1] >= 1)
    B = find(lambda m: m[0] == 0 and 2 * m[1] > d and m[2] >= 1)
    C = find(lambda m: m[1] == 0 and 2 * m[2] > d and m[0] >= 1)
    if not (A and B and C) or len({A, B, C}) != 3:
        return None
    a1, a2 = A[0], A[1]
    b1 = B[1]
    c1, c2 = C[2], C[0]
    alpha = a1 + b1 - d
    beta = a1 + c1 - d
    nu = b1 + c1 - d
    lam = a1 * b1 + a2 * c2 - b1 * c2
    return alpha, beta, nu, lam


def _match_b(mons: list[tuple[int, int, int]], d: int):
    pure = [m for m in mons if m == (d, 0, 0)]
    if len(pure) != 1:
        return None
    rest = [m for m in mons if m != (d, 0, 0)]
    for mid, last in (rest, rest[::-1]):
        # x^d + x^a1 y^a2 z^a3 + y^b z^c with a2, c > d/2
        if last[0] == 0 and 2 * last[2] > d and 2 * mid[1] > d:
            a2, a3 = mid[1], mid[2]
            b, c = last[1], last[2]
            return a2, c, a2 + c - d, a2 * c - a3 * b
    return None


def classify_trinomial(h: Polynomial | str) -> TrinomialClassification:
    """Classify a plane trinomial curve and compute its modulus ``lambda_h``."""
    if isinstance(h, str):
        h = Polynomial.parse(h)
    if h.nvars != 3 or len(h.terms) != 3 or not h.is_homogeneous():
        raise NotTrinomial(f"{h} is not a homogeneous trinomial in x, y, z")
    d = h.degree
    if d < 3:
        raise NotTrinomial(f"degree {d} < 3")
    exps = list(h.terms)
    for i in range(3):
        mult = _coordinate_multiplicity(exps, i, d)
        if mult is not None and 2 * mult >= d:
            return TrinomialClassification("irregular", d, 1)
    for kind, matcher in (("regular-a", _match_a), ("regular-b", _match_b)):
        for perm in itertools.permutations(range(3)):
            # pattern variable k is the original variable perm[k]
            mons = [tuple(e[perm[k]] for k in range(3)) for e in exps]
            found = matcher(mons, d)
            if found is None:
                continue
            alpha, beta, nu, lam = found
            if lam == 0:
                raise Unmatched(f"{h}: lambda vanishes")
            a = gcd(alpha, beta, nu, lam)
            return TrinomialClassification(kind, d, abs(lam) // a, alpha, beta, nu, lam, perm)
    raise Unmatched(f"{h} is regular but matches neither normal form")


def congruence_agreement(p: int, lambdas: Sequence[int], variant: str = "statement") -> bool:
    """Whether ``p = +-1`` modulo ``lcm(lambdas)`` (``variant="statement"``) or
    modulo ``lcm(2*lambdas)`` (``variant="proof"``)."""
    if variant not in ("statement", "proof"):
        raise ValueError("variant must be 'statement' or 'proof'")
    if any(v < 1 for v in lambdas):
        raise ValueError("lambda values must be positive")
    mods = [2 * v if variant == "proof" else v for v in lambdas]
    m = lcm(*mods) if mods else 1
    if m == 1:
        return True
    return p % m in (1, m - 1)


# JSON ----------------------------------------------------------------------

def _fr(obj) -> Fraction:
    if isinstance(obj, dict):
        return Fraction(int(obj["num"]), int(obj["den"]))
    return Fraction(obj)


def hn_from_json(obj: dict) -> RefinedHNData:
    """Parse ``{"degree": d, "blocks": [{"mu", "rank", "refine": [...]}, ...]}``.

    Blocks without ``refine`` get the trivial refinement.
    """
    d = int(obj["degree"])
    blocks = []
    refs = []
    for b in obj["blocks"]:
        mu, r = _fr(b["mu"]), int(b["rank"])
        blocks.append((mu, r))
        ref = b.get("refine") or [{"a": b["mu"], "rank": r}]
        refs.append(tuple((_fr(x["a"]), int(x["rank"])) for x in ref))
    return RefinedHNData(HNData(d, tuple(blocks)), tuple(refs))


def hn_to_json(data: RefinedHNData) -> dict:
    def fr(x: Fraction) -> dict:
        return {"num": x.numerator, "den": x.denominator}

    return {
        "degree": data.d,
        "blocks": [
            {"mu": fr(mu), "rank": r, "refine": [{"a": fr(a), "rank": rr} for a, rr in block]}
            for (mu, r), block in zip(data.base.blocks, data.refinements)
        ],
    }
