"""Hilbert polynomials written in an alternating binomial basis.

A :class:`BinomialPolynomial` of degree ``D`` with coefficients ``c_0..c_D``
stands for

    c_0*C(m+D, D) - c_1*C(m+D-1, D-1) + ... + (-1)^D * c_D

which is the shape of ``chi(X, O_X(m))`` for a projective variety of
dimension ``D``.  Binomials are generalized (``C(n, k)`` is the degree ``k``
polynomial in ``n``) so evaluation is valid at every integer ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import CancellationFailure, NotPolynomial


def binom_poly(n: int, k: int) -> int:
    """``n (n-1) ... (n-k+1) / k!`` for any integer ``n``."""
    if k < 0:
        return 0
    num = 1
    for t in range(k):
        num *= n - t
    return num // factorial(k)


@dataclass(frozen=True)
class BinomialPolynomial:
    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if self.degree < 0 or len(coeffs) != self.degree + 1:
            raise ValueError(f"degree {self.degree} needs {self.degree + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, degree: int) -> "BinomialPolynomial":
        return cls(degree, (0,) * (degree + 1))

    def __call__(self, m: int) -> int:
        D = self.degree
        return sum((-1) ** i * c * binom_poly(m + D - i, D - i) for i, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def monomial_coeffs(self) -> list[Fraction]:
        """Coefficients of ``m^0, m^1, ..., m^D`` (low to high)."""
        D = self.degree
        out = [Fraction(0)] * (D + 1)
        for i, c in enumerate(self.coeffs):
            k = D - i
            # C(m+k, k) = prod_{t=1..k} (m+t) / k!
            poly = [Fraction(1)]
            for t in range(1, k + 1):
                poly = [Fraction(0)] + poly
                for j in range(len(poly) - 1):
                    poly[j] += t * poly[j + 1]
            sign = (-1) ** i
            for j, a in enumerate(poly):
                out[j] += sign * c * a / factorial(k)
        return out

    def check(self) -> bool:
        """Basis evaluation agrees with the expanded monomial form at 2D+2 points."""
        mono = self.monomial_coeffs()
        for m in range(-self.degree - 1, self.degree + 1):
            if sum(a * m**j for j, a in enumerate(mono)) != self(m):
                return False
        return True

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj) -> "BinomialPolynomial":
        return cls(int(obj["degree"]), tuple(obj["coeffs"]))


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rows)
    a = [row[:] + [b] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def from_values(values: Sequence[int], degree: int, start: int = 0) -> BinomialPolynomial:
    """Interpolate ``values[k] = P(start + k)`` by a binomial-basis polynomial.

    Uses the first ``degree + 1`` values and requires every remaining one to
    be reproduced.
    """
    D = degree
    if len(values) < D + 2:
        raise NotPolynomial(f"need at least {D + 2} values, got {len(values)}")
    rows = [
        [Fraction((-1) ** i * binom_poly(start + k + D - i, D - i)) for i in range(D + 1)]
        for k in range(D + 1)
    ]
    sol = _solve(rows, [Fraction(v) for v in values[: D + 1]])
    if any(x.denominator != 1 for x in sol):
        raise NotPolynomial("interpolant has non-integral binomial coefficients")
    hp = BinomialPolynomial(D, tuple(int(x) for x in sol))
    for k, v in enumerate(values):
        if hp(start + k) != v:
            raise NotPolynomial(f"value at m={start + k} is {v}, polynomial gives {hp(start + k)}")
    return hp


def cokernel_hp(hp: BinomialPolynomial, p: int) -> BinomialPolynomial:
    """Hilbert polynomial ``m -> hp(m*p) - p^D * hp(m)`` of the Frobenius cokernel.

    ``hp`` has degree ``D = d-1``; the result has degree ``d-2`` because the
    top-degree terms cancel.
    """
    D = hp.degree
    if D < 1:
        raise ValueError("cokernel_hp needs a polynomial of degree >= 1")
    scale = p**D
    values = [hp(m * p) - scale * hp(m) for m in range(D + 2)]
    try:
        out = from_values(values, D - 1)
    except NotPolynomial as exc:
        raise CancellationFailure(f"leading terms did not cancel: {exc}") from exc
    # one more point beyond the fitting window guards against a surviving top term
    m = D + 2
    if out(m) != hp(m * p) - scale * hp(m):
        raise CancellationFailure("leading terms did not cancel")
    return out


def twist_difference_hp(hp: BinomialPolynomial, m0: int, side: str = "sub") -> BinomialPolynomial:
    """``m -> hp(m) - hp(m - m0)`` in the basis of one lower degree.

    ``side`` names which twist sequence the quotient comes from
    (``"sub"``: ``O(-m0) -> O -> Q``, ``"quot"``: ``O -> O(m0) -> Q``).  The
    second is the first shifted by ``m0``, so ``"quot"`` returns
    ``m -> hp(m + m0) - hp(m)``.
    """
    if m0 < 0:
        raise ValueError("m0 must be nonnegative")
    if side not in ("sub", "quot"):
        raise ValueError("side must be 'sub' or 'quot'")
    D = max(hp.degree - 1, 0)
    if m0 == 0 or hp.degree == 0:
        return BinomialPolynomial.zero(D)
    shift = 0 if side == "sub" else m0
    values = [hp(m + shift) - hp(m + shift - m0) for m in range(D + 2)]
    return from_values(values, D)
