"""Random valid inputs for property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from hkdensity.curvehn import HNData, RefinedHNData


def _composition(rng: random.Random, total: int, parts: int) -> list[int]:
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


def random_refined_hn(rng: random.Random) -> RefinedHNData:
    """HN data with 1-3 blocks, each refined into pieces of the same total
    rank and degree whose slopes straddle the block slope."""
    d = rng.randint(1, 6)
    nblocks = rng.randint(1, 3)
    slopes = sorted({Fraction(-rng.randint(0, 3 * d), rng.randint(1, 4)) for _ in range(nblocks)}, reverse=True)
    blocks = [(mu, rng.randint(1, 4)) for mu in slopes]
    refs = []
    for mu, r in blocks:
        t = rng.randint(1, r) if mu < 0 else 1
        ranks = _composition(rng, r, t)
        raw = sorted({Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(t)}, reverse=True)
        while len(raw) < t:
            raw.append(raw[-1] - 1)
        mean = sum(x * rr for x, rr in zip(raw, ranks)) / r
        dev = [x - mean for x in raw]
        if dev[0] > 0:
            eps = min(Fraction(1), -mu / dev[0]) * Fraction(rng.randint(1, 4), 4)
        else:
            eps = Fraction(0)
        refs.append(tuple((mu + eps * x, rr) for x, rr in zip(dev, ranks)) if eps else ((mu, r),))
    return RefinedHNData(HNData(d, tuple(blocks)), tuple(refs))
