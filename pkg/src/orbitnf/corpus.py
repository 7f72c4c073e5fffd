"""Seeded random interlacing pairs for sweeps and tests.

Lambdas are drawn from a small rational grid so that repeated values (and
therefore every component shape) show up often; each mu_i is pinned to
lambda_i, pinned to lambda_{i+1}, or placed strictly between them.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .pattern import SpectrumPair, validate_interlacing


def random_lambda(rng: random.Random, n: int, spread: int = 8) -> list[Fraction]:
    den = rng.choice([1, 1, 2, 3, 4])
    pool = [Fraction(k, den) for k in range(-spread * den, spread * den + 1)]
    distinct = rng.randint(1, n + 1)
    values = rng.sample(pool, min(distinct, len(pool)))
    lam = values + [rng.choice(values) for _ in range(n + 1 - len(values))]
    return sorted(lam, reverse=True)


def random_pair(rng: random.Random, n: int) -> SpectrumPair:
    lam = random_lambda(rng, n)
    mu = []
    for i in range(n):
        hi, lo = lam[i], lam[i + 1]
        kind = rng.randrange(3)
        if kind == 0 or hi == lo:
            mu.append(hi if kind != 1 else lo)
        elif kind == 1:
            mu.append(lo)
        else:
            d = rng.randint(2, 6)
            mu.append(lo + (hi - lo) * Fraction(rng.randint(1, d - 1), d))
    return validate_interlacing(lam, mu)


def corpus(seed: int, count: int, max_n: int) -> list[SpectrumPair]:
    rng = random.Random(seed)
    return [random_pair(rng, rng.randint(1, max_n)) for _ in range(count)]
