"""Whole-S_n censuses: occurrence counts, occurrence-location classes, and
conditional avoidance counts along a chain of induced patterns."""
from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .errors import CapacityError, InvalidInputError
from .patterns import contains, occurrence_oracle, occurrence_set
from .perm import (IndexSubset, Perm, as_perm, enumerate_sn, enumerate_sn_range, reduce,
                   shard_ranges, subsequence)

CLASS_CENSUS_CAP = 8
COUNT_CENSUS_CAP = 9
MAX_CLASSES = 2_000_000

ClassKey = tuple[IndexSubset, ...]


@dataclass
class OccurrenceCensus:
    n: int
    pattern: Perm
    by_count: dict[int, int]
    # None when the class map was skipped or exceeded max_classes
    by_location_class: dict[ClassKey, int] | None = field(default=None)

    @property
    def avoiders(self) -> int:
        return self.by_count.get(0, 0)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "v": str(self.pattern),
            "by_count": {str(r): c for r, c in sorted(self.by_count.items())},
        }
        if self.by_location_class is not None:
            out["classes"] = [{"locations": [list(B) for B in key], "count": c}
                              for key, c in sorted(self.by_location_class.items())]
        return out


def _census_shard(args):
    n, pattern, lo, hi, with_classes, cap = args
    by_count, classes = Counter(), Counter()
    for p in enumerate_sn_range(n, lo, hi, cap=cap):
        # a pattern longer than the host simply never occurs
        locs = occurrence_set(p, pattern).locations if len(pattern) <= n else ()
        by_count[len(locs)] += 1
        if with_classes and locs:
            classes[locs] += 1
    return by_count, classes


def census(n: int, v, classes: bool = True, threads: int = 1,
           max_classes: int = MAX_CLASSES, cap: int | None = None) -> OccurrenceCensus:
    """Tally every pi in S_n by occ(pi, v) and, optionally, by its exact location set.

    Shards of the lexicographic range are merged by key-wise addition, so the
    result does not depend on ``threads``.
    """
    v = as_perm(v)
    if n < 0:
        raise InvalidInputError(f"n must be non-negative, got {n}")
    if cap is None:
        cap = CLASS_CENSUS_CAP if classes else COUNT_CENSUS_CAP
    if n > cap:
        raise CapacityError(f"n={n} exceeds the census cap {cap}")
    jobs = [(n, v, lo, hi, classes, cap) for lo, hi in shard_ranges(math.factorial(n), threads)]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(_census_shard, jobs))
    else:
        parts = [_census_shard(j) for j in jobs]
    by_count, by_class = Counter(), Counter()
    for bc, cl in parts:
        by_count.update(bc)
        by_class.update(cl)
    class_map = None
    if classes and len(by_class) <= max_classes:
        class_map = dict(sorted(by_class.items()))
    return OccurrenceCensus(n, v, dict(sorted(by_count.items())), class_map)


@dataclass(frozen=True)
class ChainSpec:
    pattern: Perm
    subsets: tuple[IndexSubset, ...]  # A_0 .. A_d
    induced: tuple[Perm, ...]         # v^0 .. v^d

    @property
    def d(self) -> int:
        return len(self.pattern)


def parse_chain(text: str) -> list[tuple[int, ...]]:
    """``"2;2,3;2,3,5"`` -> intermediate subsets (A_0 and A_d implicit)."""
    out = []
    for pos, part in enumerate(text.split(";")):
        part = part.strip()
        if not part:
            raise InvalidInputError(f"empty subset at position {pos} in chain {text!r}")
        try:
            out.append(tuple(int(t) for t in part.split(",")))
        except ValueError:
            raise InvalidInputError(f"non-integer entry in subset {pos} ({part!r}) of chain {text!r}")
    return out


def induced_chain(v, subsets: Sequence[Sequence[int]]) -> ChainSpec:
    """Build the tower A_0 < A_1 < ... < A_d = [d] and its induced patterns.

    ``subsets`` is either the full tower (d+1 sets) or only the d-1 proper
    nonempty members, in which case the empty set and [d] are added.
    """
    v = as_perm(v)
    d = len(v)
    sets = [tuple(sorted(set(A))) for A in subsets]
    if len(sets) == d - 1 and d >= 1:
        sets = [()] + sets + [tuple(range(1, d + 1))]
    if len(sets) != d + 1:
        raise InvalidInputError(f"a chain for a pattern of length {d} needs {d + 1} sets, got {len(sets)}")
    for i, A in enumerate(sets):
        if len(A) != i:
            raise InvalidInputError(f"A_{i} = {set(A)} has size {len(A)}, expected {i}")
        if A and not (1 <= A[0] and A[-1] <= d):
            raise InvalidInputError(f"A_{i} = {set(A)} is not a subset of [{d}]")
        if i and not set(sets[i - 1]) < set(A):
            raise InvalidInputError(f"A_{i - 1} is not strictly contained in A_{i}")
    induced = tuple(reduce(subsequence(v, A)) for A in sets)
    return ChainSpec(v, tuple(sets), induced)


def _first_avoided(p: Perm, induced: Sequence[Perm]) -> int | None:
    for i in range(1, len(induced)):
        if not contains(p, induced[i]):
            return i
    return None


def _chain_shard(args):
    n, induced, lo, hi = args
    counts = Counter()
    for p in enumerate_sn_range(n, lo, hi):
        i = _first_avoided(p, induced)
        if i is not None and i >= 2:
            counts[i] += 1
    return counts


def conditional_avoidance_counts(n: int, chain: ChainSpec, threads: int = 1) -> dict[int, int]:
    """``{i: #pi in S_n avoiding v^i but containing v^(i-1)}`` for i = 2..d.

    Each pi is placed at the first i whose induced pattern it avoids; since
    v^(i-1) occurs in v^i that is exactly the class it belongs to.
    """
    d = chain.d
    if d < 2:
        raise InvalidInputError("chain needs a pattern of length >= 2")
    if n > COUNT_CENSUS_CAP:
        raise CapacityError(f"n={n} exceeds the census cap {COUNT_CENSUS_CAP}")
    jobs = [(n, chain.induced, lo, hi) for lo, hi in shard_ranges(math.factorial(n), threads)]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(_chain_shard, jobs))
    else:
        parts = [_chain_shard(j) for j in jobs]
    total = Counter()
    for c in parts:
        total.update(c)
    return {i: total.get(i, 0) for i in range(2, d + 1)}


def conditional_avoidance_oracle(n: int, chain: ChainSpec) -> dict[int, int]:
    """Same counts by independent pairwise tests with the brute-force oracle."""
    def has(p, q):
        return len(q) <= len(p) and len(occurrence_oracle(p, q)) > 0

    perms = list(enumerate_sn(n))
    out = {}
    for i in range(2, chain.d + 1):
        big, small = chain.induced[i], chain.induced[i - 1]
        out[i] = sum(1 for p in perms if not has(p, big) and has(p, small))
    return out
