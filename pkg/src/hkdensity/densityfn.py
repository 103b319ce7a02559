"""Hilbert-Kunz density step functions and their convergence diagnostics.

For ``q = p^n`` the level-``n`` density of a pair ``(R, I)`` of dimension
``d`` is the step function with value ``dim (R/I^[q])_j / q^(d-1)`` on the
cell ``[j/q, (j+1)/q)``.  The *full* view covers ``x >= 0``; the *tail* view
keeps only ``x >= 1`` (cells ``j >= q``).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import HKError, IncompatibleGrids
from .gradedring import GradedPresentation, ModPFiber, colength, quotient_dims

VIEWS = ("full", "tail")


def _frac_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def _frac_from(obj) -> Fraction:
    if isinstance(obj, dict):
        return Fraction(int(obj["num"]), int(obj["den"]))
    return Fraction(obj)


@dataclass(frozen=True)
class StepFunction:
    """Right-continuous step function on the grid ``1/q``.

    ``values[k]`` is the value on ``[(offset+k)/q, (offset+k+1)/q)``; the
    function is zero on cells past the stored ones.  Trailing zeros are
    trimmed on construction.
    """

    q: int
    values: tuple[Fraction, ...]
    offset: int = 0
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.q < 1 or self.offset < 0:
            raise ValueError("q must be positive and offset nonnegative")
        vals = [Fraction(v) for v in self.values]
        while vals and vals[-1] == 0:
            vals.pop()
        object.__setattr__(self, "values", tuple(vals))

    @property
    def end(self) -> int:
        """One past the last nonzero cell index."""
        return self.offset + len(self.values)

    def at_index(self, j: int) -> Fraction:
        k = j - self.offset
        if 0 <= k < len(self.values):
            return self.values[k]
        return Fraction(0)

    def __call__(self, x) -> Fraction:
        return self.at_index(math.floor(Fraction(x) * self.q))

    def items(self) -> Iterable[tuple[int, Fraction]]:
        return ((self.offset + k, v) for k, v in enumerate(self.values))

    # serialization -------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "q": self.q,
            "offset": self.offset,
            "values": [_frac_json(v) for v in self.values],
            "meta": self.meta,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "StepFunction":
        return cls(int(obj["q"]), tuple(_frac_from(v) for v in obj["values"]),
                   int(obj.get("offset", 0)), dict(obj.get("meta", {})))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def to_csv(self) -> str:
        """Rows ``j, x_lo, num, den``; ``x_lo`` is a float for plotting only."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["j", "x_lo", "num", "den"])
        for j, v in self.items():
            w.writerow([j, repr(j / self.q), v.numerator, v.denominator])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, q: int) -> "StepFunction":
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows:
            return cls(q, ())
        first = int(rows[0]["j"])
        vals = [Fraction(0)] * (int(rows[-1]["j"]) - first + 1)
        for r in rows:
            vals[int(r["j"]) - first] = Fraction(int(r["num"]), int(r["den"]))
        return cls(q, tuple(vals), first)


def density_function(fiber: ModPFiber, n: int, view: str = "full") -> StepFunction:
    """Level-``n`` density step function of ``(R_p, I_p)``."""
    if view not in VIEWS:
        raise ValueError(f"view must be one of {VIEWS}")
    q = fiber.p**n
    scale = q ** (fiber.d - 1)
    dims = quotient_dims(fiber, n)
    offset = q if view == "tail" else 0
    values = tuple(Fraction(ell, scale) for ell in dims[offset:])
    meta = {
        "p": fiber.p,
        "n": n,
        "d": fiber.d,
        "n0": fiber.n0,
        "mu": fiber.mu,
        "ring_hash": fiber.presentation.content_hash(),
        "view": view,
    }
    return StepFunction(q, values, offset, meta)


def _common_grid(f: StepFunction, g: StepFunction) -> int:
    big, small = max(f.q, g.q), min(f.q, g.q)
    if big % small:
        raise IncompatibleGrids(f"resolutions {f.q} and {g.q} are not nested")
    return big


def sup_norm_diff(f: StepFunction, g: StepFunction) -> Fraction:
    """Exact ``sup |f - g|`` over the common refinement of the two grids."""
    Q = _common_grid(f, g)
    sf, sg = Q // f.q, Q // g.q
    lo = min(f.offset * sf, g.offset * sg)
    hi = max(f.end * sf, g.end * sg)
    best = Fraction(0)
    for k in range(lo, hi):
        diff = abs(f.at_index(k // sf) - g.at_index(k // sg))
        if diff > best:
            best = diff
    return best


def integrate(f: StepFunction) -> Fraction:
    return sum(f.values, Fraction(0)) / f.q


def ehk_estimate(fiber: ModPFiber, n: int) -> Fraction:
    """``length(R/I^[q]) / q^d``; checked against the integral of the density."""
    q = fiber.p**n
    est = Fraction(colength(fiber, n), q**fiber.d)
    integral = integrate(density_function(fiber, n, "full"))
    if est != integral:
        raise AssertionError(f"colength estimate {est} differs from density integral {integral}")
    return est


def sampled_distance(f: StepFunction, g: StepFunction) -> Fraction:
    """Max of ``|f - g|`` at the left endpoints of the coarser function's cells.

    Used across primes, where the grids have no common refinement.
    """
    coarse, fine = (f, g) if f.q <= g.q else (g, f)
    lo = min(coarse.offset, math.floor(Fraction(fine.offset, fine.q) * coarse.q))
    hi = max(coarse.end, math.ceil(Fraction(fine.end, fine.q) * coarse.q))
    best = Fraction(0)
    for j in range(lo, hi):
        x = Fraction(j, coarse.q)
        best = max(best, abs(coarse.at_index(j) - fine(x)))
    return best


@dataclass
class ConvergenceRow:
    p: int
    n: int
    norm: Fraction
    ehk_n: Fraction
    ehk_next: Fraction
    scaled: Fraction  # norm * p^(n-d+2)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "norm": _frac_json(self.norm),
            "ehk_n": _frac_json(self.ehk_n),
            "ehk_next": _frac_json(self.ehk_next),
            "ehk_diff": _frac_json(abs(self.ehk_n - self.ehk_next)),
            "scaled_norm": _frac_json(self.scaled),
        }


@dataclass
class ConvergenceReport:
    d: int
    ring_hash: str
    rows: list[ConvergenceRow] = field(default_factory=list)
    decay_exponents: dict[int, float | None] = field(default_factory=dict)
    non_increasing: dict[int, bool] = field(default_factory=dict)
    failures: dict[int, str] = field(default_factory=dict)
    cross_prime: list[dict] = field(default_factory=list)

    def rows_for(self, p: int) -> list[ConvergenceRow]:
        return [r for r in self.rows if r.p == p]

    def norm(self, p: int, n: int) -> Fraction:
        for r in self.rows:
            if r.p == p and r.n == n:
                return r.norm
        raise KeyError((p, n))

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "ring_hash": self.ring_hash,
            "rows": [r.to_json() for r in self.rows],
            "decay_exponents": {str(p): a for p, a in self.decay_exponents.items()},
            "scaled_norm_non_increasing": {str(p): v for p, v in self.non_increasing.items()},
            "failures": {str(p): msg for p, msg in self.failures.items()},
            "cross_prime": self.cross_prime,
        }


def _fit_exponent(norms: Sequence[Fraction], p: int) -> float | None:
    """Least-squares slope of ``-log_p norm_n`` against ``n``."""
    pts = [(k, -math.log(float(v), p)) for k, v in enumerate(norms) if v > 0]
    if len(pts) < 2:
        return None
    mx = sum(x for x, _ in pts) / len(pts)
    my = sum(y for _, y in pts) / len(pts)
    sxx = sum((x - mx) ** 2 for x, _ in pts)
    return sum((x - mx) * (y - my) for x, y in pts) / sxx


def convergence_report(presentation: GradedPresentation, primes: Sequence[int], max_n: int,
                       view: str = "tail", progress=None, **fiber_kwargs) -> ConvergenceReport:
    """Tabulate ``||f_n - f_{n+1}||`` and e_HK estimates for ``1 <= n < max_n``.

    Per prime, the scaled norms ``||f_n - f_{n+1}|| * p^(n-d+2)`` should not
    grow with ``n``.  A prime that fails (bad reduction, degree cap) is
    recorded in ``failures`` and skipped.
    """
    if not primes:
        raise ValueError("at least one prime is required")
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    d = presentation.dimension
    report = ConvergenceReport(d, presentation.content_hash())
    level_fns: dict[int, dict[int, StepFunction]] = {}
    for p in sorted(set(primes)):
        try:
            fiber = presentation.fiber(p, **fiber_kwargs)
            fns = {n: density_function(fiber, n, view) for n in range(1, max_n + 1)}
            ehk = {n: ehk_estimate(fiber, n) for n in range(1, max_n + 1)}
        except HKError as exc:
            report.failures[p] = f"{type(exc).__name__}: {exc}"
            if progress:
                progress({"prime": p, "status": "failed", "error": type(exc).__name__})
            continue
        level_fns[p] = fns
        norms = []
        for n in range(1, max_n):
            norm = sup_norm_diff(fns[n], fns[n + 1])
            norms.append(norm)
            scaled = norm * Fraction(p) ** (n - d + 2)
            report.rows.append(ConvergenceRow(p, n, norm, ehk[n], ehk[n + 1], scaled))
        scaled = [r.scaled for r in report.rows_for(p)]
        report.non_increasing[p] = all(a >= b for a, b in zip(scaled, scaled[1:]))
        report.decay_exponents[p] = _fit_exponent(norms, p)
        if progress:
            progress({"prime": p, "status": "done", "levels": max_n})
    good = sorted(level_fns)
    for a, b in zip(good, good[1:]):
        for n in range(1, max_n + 1):
            dist = sampled_distance(level_fns[a][n], level_fns[b][n])
            report.cross_prime.append({"p": a, "p_next": b, "n": n, "sampled_distance": _frac_json(dist)})
    return report
