"""Exact piecewise-polynomial functions with rational breakpoints.

A function is a sorted tuple of pieces ``[lo, hi)`` carrying polynomial
coefficients (low to high degree, in ``x``).  It is zero off its pieces.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Coeffs = tuple[Fraction, ...]


def _trim(c: Sequence[Fraction]) -> Coeffs:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Coeffs:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_scale(a: Sequence[Fraction], s) -> Coeffs:
    return _trim([x * s for x in a])


def poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> Coeffs:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def poly_eval(a: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_antiderivative(a: Sequence[Fraction]) -> Coeffs:
    return (Fraction(0),) + tuple(Fraction(c) / (i + 1) for i, c in enumerate(a))


@dataclass(frozen=True)
class Piece:
    lo: Fraction
    hi: Fraction
    coeffs: Coeffs

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        object.__setattr__(self, "coeffs", _trim(Fraction(c) for c in self.coeffs))
        if not self.lo < self.hi:
            raise ValueError(f"empty piece [{self.lo}, {self.hi})")


class PiecewisePolynomial:
    def __init__(self, pieces: Iterable[Piece] = ()):
        ps = sorted(pieces, key=lambda p: p.lo)
        for a, b in zip(ps, ps[1:]):
            if b.lo < a.hi:
                raise ValueError(f"pieces [{a.lo},{a.hi}) and [{b.lo},{b.hi}) overlap")
        self.pieces: tuple[Piece, ...] = tuple(ps)
        self._los = [p.lo for p in ps]

    @classmethod
    def single(cls, lo, hi, coeffs: Sequence) -> "PiecewisePolynomial":
        return cls([Piece(lo, hi, tuple(coeffs))])

    @classmethod
    def zero(cls) -> "PiecewisePolynomial":
        return cls()

    def piece_at(self, x) -> Piece | None:
        x = Fraction(x)
        k = bisect.bisect_right(self._los, x) - 1
        if k >= 0 and x < self.pieces[k].hi:
            return self.pieces[k]
        return None

    def __call__(self, x) -> Fraction:
        piece = self.piece_at(x)
        return poly_eval(piece.coeffs, Fraction(x)) if piece else Fraction(0)

    def left_limit(self, x) -> Fraction:
        x = Fraction(x)
        for p in self.pieces:
            if p.lo < x <= p.hi:
                return poly_eval(p.coeffs, x)
        return Fraction(0)

    def breakpoints(self) -> list[Fraction]:
        pts = set()
        for p in self.pieces:
            pts.add(p.lo)
            pts.add(p.hi)
        return sorted(pts)

    @property
    def support_end(self) -> Fraction:
        nz = [p.hi for p in self.pieces if p.coeffs]
        return max(nz) if nz else Fraction(0)

    def _coeffs_on(self, lo: Fraction, hi: Fraction) -> Coeffs:
        piece = self.piece_at(lo)
        if piece is None or piece.hi < hi:
            return ()
        return piece.coeffs

    def _combine(self, other: "PiecewisePolynomial", op) -> "PiecewisePolynomial":
        pts = sorted(set(self.breakpoints()) | set(other.breakpoints()))
        out = []
        for lo, hi in zip(pts, pts[1:]):
            c = op(self._coeffs_on(lo, hi), other._coeffs_on(lo, hi))
            if c:
                out.append(Piece(lo, hi, c))
        return PiecewisePolynomial(out).canonical()

    def __add__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        return self._combine(other, poly_add)

    def __sub__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        return self._combine(other, lambda a, b: poly_add(a, poly_scale(b, -1)))

    def __mul__(self, other) -> "PiecewisePolynomial":
        if isinstance(other, PiecewisePolynomial):
            return self._combine(other, poly_mul)
        return PiecewisePolynomial(
            Piece(p.lo, p.hi, poly_scale(p.coeffs, Fraction(other))) for p in self.pieces if p.coeffs and other
        )

    __rmul__ = __mul__

    def integrate(self, lo=None, hi=None) -> Fraction:
        total = Fraction(0)
        for p in self.pieces:
            a = p.lo if lo is None else max(p.lo, Fraction(lo))
            b = p.hi if hi is None else min(p.hi, Fraction(hi))
            if a >= b:
                continue
            F = poly_antiderivative(p.coeffs)
            total += poly_eval(F, b) - poly_eval(F, a)
        return total

    def canonical(self) -> "PiecewisePolynomial":
        """Drop zero pieces and merge touching pieces with equal polynomials."""
        out: list[Piece] = []
        for p in self.pieces:
            if not p.coeffs:
                continue
            if out and out[-1].hi == p.lo and out[-1].coeffs == p.coeffs:
                out[-1] = Piece(out[-1].lo, p.hi, p.coeffs)
            else:
                out.append(p)
        return PiecewisePolynomial(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiecewisePolynomial):
            return NotImplemented
        return self.canonical().pieces == other.canonical().pieces

    def __repr__(self) -> str:
        body = ", ".join(f"[{p.lo}, {p.hi}): {list(map(str, p.coeffs))}" for p in self.pieces)
        return f"PiecewisePolynomial({body})"

    def is_continuous(self, start=None) -> bool:
        """Value and left limit agree at every breakpoint (except ``start``)."""
        for x in self.breakpoints():
            if start is not None and x == Fraction(start):
                continue
            if self(x) != self.left_limit(x):
                return False
        return True

    def to_json(self) -> list[dict]:
        def fr(x: Fraction) -> dict:
            return {"num": x.numerator, "den": x.denominator}

        return [{"from": fr(p.lo), "to": fr(p.hi), "coeffs": [fr(c) for c in p.coeffs]} for p in self.pieces]

    @classmethod
    def from_json(cls, obj: list[dict]) -> "PiecewisePolynomial":
        def fr(d) -> Fraction:
            return Fraction(int(d["num"]), int(d["den"])) if isinstance(d, dict) else Fraction(d)

        return cls(Piece(fr(p["from"]), fr(p["to"]), tuple(fr(c) for c in p["coeffs"])) for p in obj)
