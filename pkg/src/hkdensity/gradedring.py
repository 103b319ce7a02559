"""Standard graded presentations over Z and their reductions mod p.

A presentation is ``Z[x_0..x_N] / (relations)`` together with homogeneous
generators of an ideal ``I`` of finite colength.  Everything numerical is
done on a :class:`ModPFiber` by building, for each degree ``j``, the matrix
of ``monomial * generator`` products in the monomial basis and taking its
rank over F_p.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    BadPrime,
    DegreeCapExceeded,
    InfiniteColength,
    NotPolynomial,
    NotStabilized,
    Overflow,
)
from .exactalg import SparseColumnMatrix, check_modulus, rank, reduce_integer_poly
from .hilbertpoly import binom_poly, from_values
from .polynomial import Polynomial, monomials_of_degree

DEFAULT_MAX_DEGREE = 20000


@dataclass(frozen=True)
class GradedPresentation:
    nvars: int
    relations: tuple[Polynomial, ...]
    generators: tuple[Polynomial, ...]
    dimension: int
    var_names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.var_names:
            object.__setattr__(self, "var_names", tuple(f"x{i}" for i in range(self.nvars)))
        object.__setattr__(self, "relations", tuple(self.relations))
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(self.var_names) != self.nvars:
            raise ValueError("one name per variable is required")
        if not self.generators:
            raise ValueError("the ideal needs at least one generator")
        if not 1 <= self.dimension <= self.nvars:
            raise ValueError(f"dimension {self.dimension} must lie in [1, {self.nvars}]")
        for kind, polys in (("relation", self.relations), ("generator", self.generators)):
            for f in polys:
                if f.nvars != self.nvars or f.modulus is not None:
                    raise ValueError(f"{kind} {f} is not an integer polynomial in {self.nvars} variables")
                if f.is_zero() or not f.is_homogeneous() or f.degree < 1:
                    raise ValueError(f"{kind} {f} must be homogeneous of positive degree")

    @property
    def mu(self) -> int:
        return len(self.generators)

    @property
    def generator_degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    def to_json(self) -> dict:
        return {
            "vars": list(self.var_names),
            "dimension": self.dimension,
            "relations": [f.to_json() for f in self.relations],
            "ideal": [g.to_json() for g in self.generators],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GradedPresentation":
        names = tuple(obj["vars"])
        n = len(names)
        return cls(
            n,
            tuple(Polynomial.from_json(t, n) for t in obj.get("relations", [])),
            tuple(Polynomial.from_json(t, n) for t in obj["ideal"]),
            int(obj["dimension"]),
            names,
        )

    @classmethod
    def load(cls, path: str | Path) -> "GradedPresentation":
        return cls.from_json(json.loads(Path(path).read_text()))

    def content_hash(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def fiber(self, p: int, **kwargs) -> "ModPFiber":
        return ModPFiber(self, p, **kwargs)


def polynomial_ring(nvars: int, generators: Iterable[Polynomial] | None = None,
                    relations: Iterable[Polynomial] = (), dimension: int | None = None,
                    names: Sequence[str] | None = None) -> GradedPresentation:
    """Convenience constructor; defaults to the maximal ideal."""
    gens = tuple(generators) if generators is not None else tuple(
        Polynomial.variable(i, nvars) for i in range(nvars)
    )
    rels = tuple(relations)
    if dimension is None:
        dimension = nvars - len(rels)
    if names is None:
        names = ("x", "y", "z", "w")[:nvars] if nvars <= 3 else tuple(f"x{i}" for i in range(nvars))
    return GradedPresentation(nvars, rels, gens, dimension, tuple(names))


@dataclass(eq=False)
class ModPFiber:
    """Reduction of a presentation mod ``p`` with a witnessed ``n0``.

    Construction raises :class:`BadPrime` when a relation or generator
    vanishes mod p and :class:`InfiniteColength` when no degree ``n0`` with
    ``R_n0`` inside ``I`` is found below the cap.
    """

    presentation: GradedPresentation
    p: int
    max_degree: int = DEFAULT_MAX_DEGREE
    n0_cap: int | None = None
    workers: int = 1
    relations: tuple[Polynomial, ...] = field(init=False)
    generators: tuple[Polynomial, ...] = field(init=False)
    n0: int = field(init=False)
    _cache: dict = field(init=False, default_factory=dict, repr=False)

    def __post_init__(self):
        check_modulus(self.p)
        self.relations = tuple(reduce_integer_poly(f, self.p) for f in self.presentation.relations)
        gens = []
        for g in self.presentation.generators:
            try:
                gens.append(reduce_integer_poly(g, self.p))
            except BadPrime as exc:
                raise BadPrime(f"ideal generator {g} vanishes mod {self.p}") from exc
        self.generators = tuple(gens)
        self.n0 = find_n0(self, self.n0_cap)

    @property
    def nvars(self) -> int:
        return self.presentation.nvars

    @property
    def d(self) -> int:
        return self.presentation.dimension

    @property
    def mu(self) -> int:
        return self.presentation.mu

    def support_bound(self, q: int) -> int:
        """Degrees ``j >= n0*mu*q`` have ``(R/I^[q])_j = 0``."""
        return self.n0 * self.mu * q

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_cache"] = {}
        return state


def frobenius_power(fiber: ModPFiber, n: int) -> list[Polynomial]:
    """Generators ``g_i^q`` of ``I^[q]``, ``q = p^n``.

    Over F_p, ``(sum c_a x^a)^q = sum c_a x^(q a)``, so the power is read off
    the support of ``g``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    q = fiber.p**n
    if fiber.n0 * fiber.mu * q + fiber.d + 2 > fiber.max_degree:
        raise Overflow(f"q = {q} exceeds the degree cap {fiber.max_degree}")
    return [
        Polynomial(g.nvars, {tuple(e * q for e in exps): c for exps, c in g.terms.items()}, fiber.p)
        for g in fiber.generators
    ]


def _split_generators(nvars: int, extra: Sequence[Polynomial]) -> tuple[list[int | None], list[Polynomial]]:
    bounds: list[int | None] = [None] * nvars
    others = []
    for g in extra:
        pp = g.pure_power()
        if pp is None:
            others.append(g)
            continue
        i, e = pp
        bounds[i] = e if bounds[i] is None else min(bounds[i], e)
    return bounds, others


def degree_matrix(fiber: ModPFiber, extra: Sequence[Polynomial], j: int) -> tuple[int, SparseColumnMatrix]:
    """Return ``(#basis monomials, matrix of J_j)`` for ``J = relations + extra``.

    Pure powers ``x_i^e`` in ``extra`` restrict the basis to ``exps[i] < e``
    instead of contributing columns.
    """
    bounds, others = _split_generators(fiber.nvars, extra)
    basis = monomials_of_degree(fiber.nvars, j, bounds)
    index = {m: k for k, m in enumerate(basis)}
    columns = []
    for g in (*fiber.relations, *others):
        dg = g.degree
        if dg > j:
            continue
        gterms = list(g.terms.items())
        for m in monomials_of_degree(fiber.nvars, j - dg, bounds):
            col = []
            for exps, c in gterms:
                prod = tuple(a + b for a, b in zip(m, exps))
                k = index.get(prod)
                if k is not None:
                    col.append((k, c))
            if col:
                col.sort()
                columns.append(tuple(col))
    return len(basis), SparseColumnMatrix(len(basis), tuple(columns), fiber.p)


def graded_piece_dim(fiber: ModPFiber, extra: Sequence[Polynomial], j: int) -> int:
    """``dim_F_p (F_p[x]/(relations + extra))_j``."""
    if j < 0:
        raise ValueError("degree must be nonnegative")
    if j > fiber.max_degree:
        raise DegreeCapExceeded(f"degree {j} exceeds cap {fiber.max_degree}")
    nbasis, mat = degree_matrix(fiber, extra, j)
    if nbasis == 0:
        return 0
    return nbasis - rank(mat)


def _piece_job(args):
    fiber, extra, j = args
    return graded_piece_dim(fiber, extra, j)


def graded_piece_dims(fiber: ModPFiber, extra: Sequence[Polynomial], degrees: Sequence[int],
                      workers: int | None = None) -> list[int]:
    """``graded_piece_dim`` over several degrees, optionally in worker processes."""
    workers = fiber.workers if workers is None else workers
    degrees = list(degrees)
    if workers <= 1 or len(degrees) < 2:
        return [graded_piece_dim(fiber, extra, j) for j in degrees]
    extra = list(extra)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves order, so the merge is keyed by degree position
        return list(pool.map(_piece_job, [(fiber, extra, j) for j in degrees]))


def hilbert_function_prefix(fiber: ModPFiber, up_to: int) -> list[int]:
    """``[dim (R_p)_0, ..., dim (R_p)_up_to]``."""
    key = ("hf",)
    cached = fiber._cache.get(key, [])
    if len(cached) <= up_to:
        cached = cached + graded_piece_dims(fiber, [], range(len(cached), up_to + 1))
        fiber._cache[key] = cached
    return cached[: up_to + 1]


@dataclass(frozen=True)
class HilbertData:
    """Binomial-basis coefficients of the Hilbert-Samuel polynomial.

    ``P(m) = e[0]*C(m+d-1, d) - e[1]*C(m+d-2, d-1) + ... + (-1)^d e[d]``
    agrees with ``length(R/m^m)`` for ``m >= stable_from``.
    """

    d: int
    e: tuple[int, ...]
    stable_from: int

    def __post_init__(self):
        if len(self.e) != self.d + 1:
            raise ValueError("need d+1 coefficients")
        if self.e[0] < 1:
            raise ValueError("leading coefficient must be positive")

    @property
    def e0(self) -> int:
        return self.e[0]

    def __call__(self, m: int) -> int:
        d = self.d
        return sum((-1) ** i * c * binom_poly(m + d - 1 - i, d - i) for i, c in enumerate(self.e))


def fit_hilbert_data(values: Sequence[int], d: int) -> HilbertData:
    """Fit the Hilbert-Samuel polynomial to a Hilbert function prefix.

    ``values[j] = dim R_j``.  The cumulative sums ``S(m) = sum_{j<m} values[j]``
    are scanned with a window of ``d + 3`` points from the top down; the first
    window that a degree-``d`` polynomial fits exactly is accepted and then
    extended downward as far as the fit holds.
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    sums = [0]
    for v in values:
        sums.append(sums[-1] + v)
    width = d + 3
    for start in range(len(sums) - width, -1, -1):
        window = sums[start:start + width]
        try:
            # S(m) = chi-style polynomial evaluated at m - 1
            bp = from_values(window, d, start=start - 1)
        except NotPolynomial:
            continue
        if bp.coeffs[0] < 1:
            raise NotStabilized(f"leading coefficient {bp.coeffs[0]} is not positive; is d = {d} right?")
        hd = HilbertData(d, bp.coeffs, start)
        lo = start
        while lo > 0 and hd(lo - 1) == sums[lo - 1]:
            lo -= 1
        return HilbertData(d, bp.coeffs, lo)
    raise NotStabilized(f"no polynomial window of width {width} in {len(sums)} cumulative values")


def hilbert_data(fiber: ModPFiber, up_to: int | None = None) -> HilbertData:
    """Hilbert data of ``R_p`` from a computed Hilbert function prefix."""
    d = fiber.d
    if up_to is None:
        up_to = 4 * d + 8 + 2 * max((f.degree for f in fiber.relations), default=0)
    return fit_hilbert_data(hilbert_function_prefix(fiber, up_to), d)


def find_n0(fiber: ModPFiber, cap: int | None = None) -> int:
    """Smallest ``n`` with ``(R_p/I_p)_n = 0``, witnessed on the next ``d+2`` degrees."""
    degs = [g.degree for g in fiber.generators]
    if cap is None:
        cap = 4 * max(degs) * len(degs)
    window = fiber.d + 2
    dims: dict[int, int] = {}

    def dim(j: int) -> int:
        if j not in dims:
            dims[j] = graded_piece_dim(fiber, fiber.generators, j)
        return dims[j]

    for n in range(1, cap + 1):
        if dim(n) == 0 and all(dim(n + k) == 0 for k in range(1, window + 1)):
            return n
    raise InfiniteColength(f"no degree n <= {cap} with R_n inside I (mod {fiber.p})")


def quotient_dims(fiber: ModPFiber, n: int) -> list[int]:
    """``[dim (R/I^[q])_j for 0 <= j < n0*mu*q]`` with ``q = p^n``.

    Pieces are computed upward until the first zero; past it everything
    vanishes because ``R/I^[q]`` is generated in degree one.
    """
    key = ("quot", n)
    if key in fiber._cache:
        return fiber._cache[key]
    gens = frobenius_power(fiber, n)
    q = fiber.p**n
    bound = fiber.support_bound(q)
    out: list[int] = []
    j = 0
    chunk = max(1, fiber.workers)
    while j < bound:
        block = graded_piece_dims(fiber, gens, range(j, min(bound, j + chunk)))
        out.extend(block)
        j += len(block)
        if 0 in block:
            out = out[: out.index(0)]
            break
    out.extend([0] * (bound - len(out)))
    fiber._cache[key] = out
    return out


def colength(fiber: ModPFiber, n: int) -> int:
    """``length(R_p / I_p^[p^n])``."""
    return sum(quotient_dims(fiber, n))
