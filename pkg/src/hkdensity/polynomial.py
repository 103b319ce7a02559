"""Sparse multivariate polynomials with integer or mod-p coefficients.

Exponent vectors are tuples of length ``nvars``; coefficients are Python ints.
When ``modulus`` is set every coefficient lives in ``[0, modulus)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

Monomial = tuple[int, ...]

DEFAULT_VARS = ("x", "y", "z")


@dataclass(frozen=True)
class Polynomial:
    nvars: int
    terms: Mapping[Monomial, int] = field(default_factory=dict)
    modulus: int | None = None

    def __post_init__(self):
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise ValueError(f"exponent vector {exps} has wrong length")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = int(c)
            if self.modulus is not None:
                c %= self.modulus
            if c:
                clean[exps] = clean.get(exps, 0) + c
        if self.modulus is not None:
            clean = {k: v % self.modulus for k, v in clean.items()}
        clean = {k: v for k, v in clean.items() if v}
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1, modulus: int | None = None) -> "Polynomial":
        return cls(len(exps), {tuple(exps): coeff}, modulus)

    @classmethod
    def variable(cls, i: int, nvars: int, modulus: int | None = None) -> "Polynomial":
        exps = [0] * nvars
        exps[i] = 1
        return cls.monomial(exps, 1, modulus)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(self.degrees())

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def pure_power(self) -> tuple[int, int] | None:
        """Return ``(i, e)`` when the polynomial is ``c * x_i^e``, else None."""
        if len(self.terms) != 1:
            return None
        (exps,) = self.terms
        support = [i for i, e in enumerate(exps) if e]
        if len(support) != 1:
            return None
        return support[0], exps[support[0]]

    def _coerce(self, other: "Polynomial") -> int | None:
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")
        if self.modulus != other.modulus:
            raise ValueError("polynomials have different coefficient rings")
        return self.modulus

    def __add__(self, other: "Polynomial") -> "Polynomial":
        mod = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Polynomial(self.nvars, out, mod)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {k: -v for k, v in self.terms.items()}, self.modulus)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial | int") -> "Polynomial":
        if isinstance(other, int):
            return Polynomial(self.nvars, {k: v * other for k, v in self.terms.items()}, self.modulus)
        mod = self._coerce(other)
        out: dict[Monomial, int] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                m = tuple(x + y for x, y in zip(a, b))
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial(self.nvars, out, mod)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        result = Polynomial.monomial((0,) * self.nvars, 1, self.modulus)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def reduce(self, p: int) -> "Polynomial":
        return Polynomial(self.nvars, self.terms, p)

    def lift(self) -> "Polynomial":
        """Forget the modulus (coefficients stay in ``[0, p)``)."""
        return Polynomial(self.nvars, self.terms, None)

    def permute(self, perm: Sequence[int]) -> "Polynomial":
        """Substitute variable ``i`` by variable ``perm[i]``."""
        out = {}
        for exps, c in self.terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(exps):
                new[perm[i]] += e
            out[tuple(new)] = c
        return Polynomial(self.nvars, out, self.modulus)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = list(names or _default_names(self.nvars))
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0]))):
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.to_str()

    # ring-spec JSON term lists
    def to_json(self) -> dict:
        return {"terms": [{"coeff": c, "exps": list(e)} for e, c in self.terms.items()]}

    @classmethod
    def from_json(cls, obj: Mapping, nvars: int) -> "Polynomial":
        terms: dict[Monomial, int] = {}
        for t in obj["terms"]:
            exps = tuple(t["exps"])
            if len(exps) != nvars:
                raise ValueError(f"exponent array {list(exps)} does not have {nvars} entries")
            terms[exps] = terms.get(exps, 0) + int(t["coeff"])
        return cls(nvars, terms)

    @classmethod
    def parse(cls, text: str, names: Sequence[str] = DEFAULT_VARS) -> "Polynomial":
        """Parse strings such as ``"x^3*y + y^3*z - 2*z^3*x"``."""
        names = list(names)
        index = {n: i for i, n in enumerate(names)}
        src = text.replace(" ", "")
        if not src:
            raise ValueError("empty polynomial string")
        if src[0] not in "+-":
            src = "+" + src
        terms: dict[Monomial, int] = {}
        pos = 0
        term_re = re.compile(r"([+-])([^+-]+)")
        for m in term_re.finditer(src):
            if m.start() != pos:
                raise ValueError(f"cannot parse {text!r}")
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            coeff = 1
            exps = [0] * len(names)
            for factor in m.group(2).split("*"):
                if not factor:
                    raise ValueError(f"empty factor in {text!r}")
                if factor.isdigit():
                    coeff *= int(factor)
                    continue
                base, _, power = factor.partition("^")
                if base not in index:
                    raise ValueError(f"unknown variable {base!r} in {text!r}")
                exps[index[base]] += int(power) if power else 1
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + sign * coeff
        if pos != len(src):
            raise ValueError(f"cannot parse {text!r}")
        return cls(len(names), terms)


def _default_names(n: int) -> list[str]:
    if n <= len(DEFAULT_VARS):
        return list(DEFAULT_VARS[:n])
    return [f"x{i}" for i in range(n)]


def monomials_of_degree(nvars: int, degree: int, bounds: Sequence[int | None] | None = None) -> list[Monomial]:
    """All exponent vectors of total ``degree``, optionally with ``exps[i] < bounds[i]``.

    The list is in graded-lexicographic order (largest first exponent first).
    """
    if degree < 0:
        return []
    caps = [degree if b is None else min(degree, b - 1) for b in (bounds or [None] * nvars)]
    out: list[Monomial] = []

    def rec(i: int, left: int, prefix: list[int]):
        if i == nvars - 1:
            if left <= caps[i]:
                out.append(tuple(prefix + [left]))
            return
        # remaining variables can absorb at most this much
        room = sum(caps[i + 1:])
        for e in range(min(left, caps[i]), max(-1, left - room - 1), -1):
            rec(i + 1, left - e, prefix + [e])

    if nvars == 0:
        return [()] if degree == 0 else []
    rec(0, degree, [])
    return out

