"""Prime-field arithmetic and sparse rank over F_p.

Rationals are plain :class:`fractions.Fraction` values (always in lowest
terms with positive denominator), so no wrapper type is defined for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import BadPrime
from .polynomial import Polynomial

MAX_MODULUS = 2**31
DENSE_ORACLE_WIDTH = 256

ExactRational = Fraction


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    """Deterministic primality for ``p < 2**64``."""
    from sympy import isprime

    return bool(isprime(p))


def check_modulus(p: int) -> int:
    p = int(p)
    if not 2 <= p < MAX_MODULUS:
        raise ValueError(f"modulus {p} outside [2, 2^31)")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


@dataclass(frozen=True)
class PrimeFieldElement:
    residue: int
    p: int

    def __post_init__(self):
        check_modulus(self.p)
        object.__setattr__(self, "residue", self.residue % self.p)

    def _other(self, other) -> int:
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise ValueError("elements of different prime fields")
            return other.residue
        return int(other)

    def __add__(self, other):
        return PrimeFieldElement(self.residue + self._other(other), self.p)

    def __sub__(self, other):
        return PrimeFieldElement(self.residue - self._other(other), self.p)

    def __mul__(self, other):
        return PrimeFieldElement(self.residue * self._other(other), self.p)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.p)

    def inverse(self) -> "PrimeFieldElement":
        if self.residue == 0:
            raise ZeroDivisionError("zero has no inverse")
        return PrimeFieldElement(pow(self.residue, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        return self * PrimeFieldElement(self._other(other), self.p).inverse()

    def __pow__(self, n: int):
        return PrimeFieldElement(pow(self.residue, n, self.p), self.p)

    def __int__(self) -> int:
        return self.residue

    def __bool__(self) -> bool:
        return self.residue != 0


Column = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SparseColumnMatrix:
    """Matrix over F_p stored as a tuple of sparse columns.

    Each column is a tuple of ``(row, value)`` pairs sorted by row, with
    ``0 < value < p``.
    """

    rows: int
    columns: tuple[Column, ...]
    p: int

    def __post_init__(self):
        check_modulus(self.p)
        cols = []
        for col in self.columns:
            entries: dict[int, int] = {}
            for r, v in col:
                r = int(r)
                if not 0 <= r < self.rows:
                    raise ValueError(f"row index {r} out of range for {self.rows} rows")
                if r in entries:
                    raise ValueError(f"duplicate row index {r} in a column")
                entries[r] = int(v) % self.p
            cols.append(tuple(sorted((r, v) for r, v in entries.items() if v)))
        object.__setattr__(self, "columns", tuple(cols))

    @classmethod
    def from_dense(cls, array, p: int) -> "SparseColumnMatrix":
        a = np.asarray(array, dtype=np.int64) % p
        if a.ndim != 2:
            raise ValueError("expected a 2-D array")
        cols = tuple(
            tuple((int(r), int(a[r, c])) for r in np.flatnonzero(a[:, c])) for c in range(a.shape[1])
        )
        return cls(a.shape[0], cols, p)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, len(self.columns)), dtype=np.int64)
        for c, col in enumerate(self.columns):
            for r, v in col:
                out[r, c] = v
        return out

    def transpose(self) -> "SparseColumnMatrix":
        by_row: list[list[tuple[int, int]]] = [[] for _ in range(self.rows)]
        for c, col in enumerate(self.columns):
            for r, v in col:
                by_row[r].append((c, v))
        return SparseColumnMatrix(len(self.columns), tuple(tuple(x) for x in by_row), self.p)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, len(self.columns)


def _components(columns: Sequence[Column]) -> list[list[int]]:
    """Group column indices whose row supports are connected."""
    parent: dict[int, int] = {}

    def find(a: int) -> int:
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    for col in columns:
        if not col:
            continue
        first = col[0][0]
        parent.setdefault(first, first)
        ra = find(first)
        for r, _ in col[1:]:
            parent.setdefault(r, r)
            rb = find(r)
            if rb != ra:
                # smaller root wins so grouping is order independent
                if rb < ra:
                    ra, rb = rb, ra
                parent[rb] = ra
    groups: dict[int, list[int]] = {}
    for i, col in enumerate(columns):
        if col:
            groups.setdefault(find(col[0][0]), []).append(i)
    return [groups[k] for k in sorted(groups)]


def _eliminate(columns: Iterable[Column], p: int) -> int:
    """Left-looking elimination keyed on the smallest row index of each column."""
    pivots: dict[int, dict[int, int]] = {}
    # shortest columns first, ties broken by row support
    for col in sorted(columns, key=lambda c: (len(c), c)):
        v = dict(col)
        while v:
            lead = min(v)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(v[lead], p - 2, p)
                pivots[lead] = {r: x * inv % p for r, x in v.items()}
                break
            c = v[lead]
            for r, x in piv.items():
                nv = (v.get(r, 0) - c * x) % p
                if nv:
                    v[r] = nv
                else:
                    v.pop(r, None)
    return len(pivots)


def rank(m: SparseColumnMatrix) -> int:
    """Rank over F_p by sparse elimination on each connected block."""
    total = 0
    for group in _components(m.columns):
        if len(group) == 1:
            total += 1
            continue
        total += _eliminate((m.columns[i] for i in group), m.p)
    return total


def rank_dense(m: SparseColumnMatrix) -> int:
    """Plain dense Gaussian elimination; kept as an independent oracle."""
    a = m.to_dense()
    if a.size == 0:
        return 0
    if a.shape[1] > DENSE_ORACLE_WIDTH:
        raise ValueError(f"dense oracle limited to {DENSE_ORACLE_WIDTH} columns")
    p = m.p
    a = a.copy()
    r = 0
    nrows, ncols = a.shape
    for c in range(ncols):
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        below = np.flatnonzero(a[r + 1:, c]) + r + 1
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[r])) % p
        r += 1
        if r == nrows:
            break
    return r


def reduce_integer_poly(poly: Polynomial, p: int) -> Polynomial:
    """Reduce an integer polynomial mod ``p``; raise BadPrime if it vanishes."""
    check_modulus(p)
    if not poly.is_homogeneous():
        raise ValueError("polynomial is not homogeneous")
    out = poly.reduce(p)
    if out.is_zero():
        raise BadPrime(f"{poly} vanishes mod {p}")
    return out


def as_fraction(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)
