"""Command-line interface: ``hkd density|ehk|converge|segre|curve ...``.

Exit codes: 0 success, 2 bad input (bad prime, infinite colength, invalid
HN data, unclassifiable trinomial, empty prime list), 3 degree cap exceeded,
4 cache verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from .curvehn import (
    classify_trinomial,
    density_from_hn,
    ehk_inf_segre_curves,
    finf_from_hn,
    hn_from_json,
)
from .densityfn import StepFunction, convergence_report, density_function, ehk_estimate
from .errors import DegreeCapExceeded, HKError
from .gradedring import DEFAULT_MAX_DEGREE, GradedPresentation, colength
from .segre import hs_partial, segre_density_finite

CACHE_FORMAT_VERSION = 1


class CacheMismatch(Exception):
    pass


class ResultCache:
    """On-disk cache of step functions keyed by ``(ring hash, p, n, view)``.

    Writes go through a temporary file and ``os.replace``, so readers never
    see a partial entry and concurrent writers of one key leave one winner.
    """

    def __init__(self, root: str | Path | None):
        self.root = Path(root) if root else None

    def _path(self, key: tuple) -> Path:
        ring_hash, p, n, view = key
        return self.root / f"{ring_hash[:32]}_{p}_{n}_{view}.json"

    def get(self, key: tuple) -> StepFunction | None:
        if self.root is None:
            return None
        path = self._path(key)
        if not path.exists():
            return None
        blob = json.loads(path.read_text())
        if blob.get("format_version") != CACHE_FORMAT_VERSION or blob.get("key") != list(key):
            return None
        return StepFunction.from_json(blob["value"])

    def put(self, key: tuple, value: StepFunction) -> None:
        if self.root is None:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        blob = {"format_version": CACHE_FORMAT_VERSION, "key": list(key), "value": value.to_json()}
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(blob, fh, sort_keys=True)
        os.replace(tmp, self._path(key))


def _cache_from_args(args) -> ResultCache:
    if args.no_cache:
        return ResultCache(None)
    root = os.environ.get("HKD_CACHE_DIR") or args.cache_dir
    return ResultCache(root)


def _fiber(args, pres: GradedPresentation, p: int):
    return pres.fiber(p, max_degree=args.degree_cap, workers=args.threads)


def _density(args, pres: GradedPresentation, p: int, n: int, view: str) -> StepFunction:
    cache = _cache_from_args(args)
    key = (pres.content_hash(), p, n, view)
    hit = cache.get(key)
    if hit is not None and not args.verify_cache:
        return hit
    fresh = density_function(_fiber(args, pres, p), n, view)
    if hit is not None and hit.dumps() != fresh.dumps():
        raise CacheMismatch(f"cached entry for {key} differs from recomputation")
    cache.put(key, fresh)
    return fresh


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _render(step: StepFunction, fmt: str) -> str:
    return step.to_csv() if fmt == "csv" else step.dumps()


def cmd_density(args) -> int:
    pres = GradedPresentation.load(args.ring)
    step = _density(args, pres, args.prime, args.power, args.view)
    _emit(_render(step, args.out), args.output)
    return 0


def cmd_ehk(args) -> int:
    pres = GradedPresentation.load(args.ring)
    fiber = _fiber(args, pres, args.prime)
    est = ehk_estimate(fiber, args.power)
    _emit(json.dumps({
        "p": args.prime,
        "n": args.power,
        "colength": colength(fiber, args.power),
        "estimate": {"num": est.numerator, "den": est.denominator},
    }), args.output)
    return 0


def cmd_converge(args) -> int:
    primes = [int(x) for x in args.primes.split(",") if x.strip()] if args.primes else []
    if not primes:
        print("error: empty prime list", file=sys.stderr)
        return 2
    pres = GradedPresentation.load(args.ring)

    def progress(rec: dict) -> None:
        print(json.dumps(rec), file=sys.stderr, flush=True)

    report = convergence_report(pres, primes, args.max_power, view=args.view, progress=progress,
                                max_degree=args.degree_cap, workers=args.threads)
    _emit(json.dumps(report.to_json(), sort_keys=True), args.output)
    return 0 if len(report.failures) < len(set(primes)) else 2


def cmd_segre(args) -> int:
    R = GradedPresentation.load(args.ring1)
    S = GradedPresentation.load(args.ring2)
    fr, fs = _fiber(args, R, args.prime), _fiber(args, S, args.prime)
    n = args.power
    q = args.prime**n
    span = max(fr.support_bound(q), fs.support_bound(q))
    out = segre_density_finite(
        density_function(fr, n), hs_partial(fr, n, span), density_function(fs, n), hs_partial(fs, n, span)
    )
    _emit(_render(out, args.out), args.output)
    return 0


def cmd_curve_hn(args) -> int:
    data = hn_from_json(json.loads(Path(args.data).read_text()))
    f = density_from_hn(data)
    finf = finf_from_hn(data.base)
    _emit(json.dumps({
        "density": f.to_json(),
        "finf": finf.to_json(),
        "integral": _frac(f.integrate()),
        "finf_integral": _frac(finf.integrate()),
    }), args.output)
    return 0


def cmd_curve_trinomial(args) -> int:
    _emit(json.dumps(classify_trinomial(args.poly).to_json()), args.output)
    return 0


def cmd_curve_segre_ehk(args) -> int:
    _emit(json.dumps(_frac(ehk_inf_segre_curves(args.d1, args.d2, args.r, args.s))), args.output)
    return 0


def _frac(x) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker processes for per-degree work")
    common.add_argument("--degree-cap", type=int, default=DEFAULT_MAX_DEGREE)
    common.add_argument("--cache-dir", default=".hkcache", help="overridden by $HKD_CACHE_DIR")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--verify-cache", action="store_true",
                        help="recompute cache hits and fail on any difference")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="hkd", description="Hilbert-Kunz density functions mod p")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", parents=[common], help="density step function f_n")
    p.add_argument("ring")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--view", choices=("full", "tail"), default="full")
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("ehk", parents=[common], help="colength and e_HK estimate")
    p.add_argument("ring")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--power", type=int, required=True)
    p.set_defaults(func=cmd_ehk)

    p = sub.add_parser("converge", parents=[common], help="convergence report over primes")
    p.add_argument("ring")
    p.add_argument("--primes", default="", help="comma separated, e.g. 5,7")
    p.add_argument("--max-power", type=int, default=2)
    p.add_argument("--view", choices=("full", "tail"), default="tail")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("segre", parents=[common], help="density of a Segre product from two rings")
    p.add_argument("ring1")
    p.add_argument("ring2")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_segre)

    curve = sub.add_parser("curve", help="closed forms for curves")
    csub = curve.add_subparsers(dest="curve_command", required=True)
    p = csub.add_parser("hn", parents=[common], help="densities from HN data")
    p.add_argument("--data", required=True)
    p.set_defaults(func=cmd_curve_hn)
    p = csub.add_parser("trinomial", parents=[common], help="classify a plane trinomial")
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_curve_trinomial)
    p = csub.add_parser("segre-ehk", parents=[common], help="e_HK limit of a Segre product of two curves")
    for name in ("--d1", "--d2", "--r", "--s"):
        p.add_argument(name, type=int, required=True)
    p.set_defaults(func=cmd_curve_segre_ehk)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DegreeCapExceeded as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except CacheMismatch as exc:
        print(f"CacheMismatch: {exc}", file=sys.stderr)
        return 4
    except (HKError, ValueError, KeyError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
