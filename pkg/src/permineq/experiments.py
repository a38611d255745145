"""Seeded experiments: the random-host occurrence bound simulation and
randomized chain-correlation trials."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .census import ChainSpec, conditional_avoidance_counts
from .measures import ChainMeasure
from .perm import Perm, as_perm, random_permutation
from .verify import OccCache, verify_t1b, verify_t2b

DEFAULT_SEED = 20240607
FIG1_PATTERNS = ("5274316", "1234765")


def sample_hosts(n: int, samples: int, seed: int = DEFAULT_SEED) -> list[Perm]:
    rng = random.Random(seed)
    return [random_permutation(n, rng) for _ in range(samples)]


def simulate_fig1(n: int = 20, samples: int = 200, patterns: Sequence = FIG1_PATTERNS,
                  ell: int = 3, seed: int = DEFAULT_SEED, mode: str = "exact") -> list[dict]:
    """occ(pi, v) against its product upper bound for seeded random hosts.

    All patterns are evaluated on the same list of hosts.
    """
    hosts = sample_hosts(n, samples, seed)
    rows = []
    for v in patterns:
        v = as_perm(v)
        for k, pi in enumerate(hosts):
            rep = verify_t1b(pi, v, ell, mode, OccCache())
            rows.append({"pattern": str(v), "sample_index": k, "lhs": rep.lhs, "rhs_log": rep.rhs_log, "holds": rep.verdict, "perm": " ".join(map(str, pi))})
    return rows


def random_chain_inputs(rng: random.Random, d: int, denom: int = 1000):
    """Random rational chain weights and a non-increasing x_2..x_d in (0, 1)."""
    raw = [rng.randint(0, denom) for _ in range(d + 1)]
    if not any(raw):
        raw[rng.randrange(d + 1)] = 1
    total = sum(raw)
    weights = tuple(Fraction(r, total) for r in raw)
    xs = sorted((Fraction(rng.randint(1, denom - 1), denom) for _ in range(d - 1)), reverse=True)
    return ChainMeasure(weights), xs


def t2b_trials(n: int, chain: ChainSpec, trials: int, seed: int = DEFAULT_SEED,
               mode: str | None = None) -> list:
    rng = random.Random(seed)
    counts = conditional_avoidance_counts(n, chain)
    out = []
    for _ in range(trials):
        weights, xs = random_chain_inputs(rng, chain.d)
        out.append(verify_t2b(n, chain, weights, xs, mode, counts=counts))
    return out
