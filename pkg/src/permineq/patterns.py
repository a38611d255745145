"""Pattern occurrence: locations, counts and contained-pattern sets.

``occ(host, pattern)`` counts occurrences of ``pattern`` inside ``host``; the
host always comes first.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import InvalidInputError
from .perm import IndexSubset, Perm, as_perm, reduce


@dataclass(frozen=True)
class OccurrenceSet:
    pattern: Perm
    host_length: int
    locations: tuple[IndexSubset, ...]  # sorted lexicographically

    def __len__(self) -> int:
        return len(self.locations)

    def __iter__(self) -> Iterator[IndexSubset]:
        return iter(self.locations)

    def __contains__(self, B) -> bool:
        return tuple(B) in set(self.locations)


def _check_lengths(host: Sequence[int], pattern: Sequence[int]) -> None:
    if len(pattern) > len(host):
        raise InvalidInputError(
            f"pattern of length {len(pattern)} is longer than host of length {len(host)}")


@lru_cache(maxsize=4096)
def _embedding_plan(pattern: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    """For each pattern position k, the earlier positions holding the nearest
    smaller and nearest larger values (-1 if none).

    A host value placed at step k is admissible iff it lies strictly between the
    host values already placed at those two positions.
    """
    plan = []
    for k, x in enumerate(pattern):
        lo = hi = -1
        for p in range(k):
            y = pattern[p]
            if y < x and (lo < 0 or y > pattern[lo]):
                lo = p
            elif y > x and (hi < 0 or y < pattern[hi]):
                hi = p
        plan.append((lo, hi))
    return tuple(plan)


def _backtrack(host: Sequence[int], pattern: Sequence[int], mode: str):
    """mode: 'count' -> int, 'contains' -> bool, 'collect' -> list of 0-based tuples."""
    n, d = len(host), len(pattern)
    if d == 0:
        return {"count": 1, "contains": True, "collect": [()]}[mode]
    plan = _embedding_plan(tuple(pattern))
    top = n + 1
    chosen = [0] * d
    found = []

    def window(k):
        lo, hi = plan[k]
        return (host[chosen[lo]] if lo >= 0 else 0,
                host[chosen[hi]] if hi >= 0 else top)

    def count(k, start):
        lo, hi = window(k)
        last = n - d + k  # prune: d - k - 1 positions still needed after this one
        if k == d - 1:
            return sum(1 for j in range(start, last + 1) if lo < host[j] < hi)
        total = 0
        for j in range(start, last + 1):
            if lo < host[j] < hi:
                chosen[k] = j
                total += count(k + 1, j + 1)
        return total

    def search(k, start, stop_early):
        lo, hi = window(k)
        for j in range(start, n - d + k + 1):
            if lo < host[j] < hi:
                chosen[k] = j
                if k == d - 1:
                    found.append(tuple(chosen))
                    if stop_early:
                        return True
                elif search(k + 1, j + 1, stop_early) and stop_early:
                    return True
        return False

    if mode == "count":
        return count(0, 0)
    if mode == "contains":
        return search(0, 0, True)
    search(0, 0, False)
    return found


def occurrence_set(host, pattern) -> OccurrenceSet:
    """All index subsets of ``host`` whose values are order-isomorphic to ``pattern``."""
    host, pattern = as_perm(host), as_perm(pattern)
    _check_lengths(host, pattern)
    locs = tuple(tuple(j + 1 for j in c) for c in _backtrack(host, pattern, "collect"))
    return OccurrenceSet(pattern, len(host), locs)


def occ(host, pattern) -> int:
    host, pattern = as_perm(host), as_perm(pattern)
    _check_lengths(host, pattern)
    return _backtrack(host, pattern, "count")


def contains(host, pattern) -> bool:
    host, pattern = as_perm(host), as_perm(pattern)
    if len(pattern) > len(host):
        return False
    return _backtrack(host, pattern, "contains")


def avoids(host, pattern) -> bool:
    return not contains(host, pattern)


def contained_patterns(host, d: int) -> frozenset[Perm]:
    """The set of length-d patterns occurring in ``host``; its size is c_d(host)."""
    host = as_perm(host)
    if not 1 <= d <= len(host):
        raise InvalidInputError(f"need 1 <= d <= {len(host)}, got d={d}")
    return frozenset(reduce(c) for c in itertools.combinations(host, d))


def occurrence_oracle(host, pattern) -> OccurrenceSet:
    """Naive reference: reduce every d-subset and compare. No pruning."""
    host, pattern = as_perm(host), as_perm(pattern)
    _check_lengths(host, pattern)
    d = len(pattern)
    locs = []
    for B in itertools.combinations(range(1, len(host) + 1), d):
        if reduce([host[j - 1] for j in B]) == pattern:
            locs.append(B)
    return OccurrenceSet(pattern, len(host), tuple(locs))
