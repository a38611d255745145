"""Permutations, order-isomorphic reduction, subsequences and enumeration.

Indices and values are 1-based at every public boundary.
"""
from __future__ import annotations

import itertools
import math
import random
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, InvalidInputError

DEFAULT_SN_CAP = 9

IndexSubset = tuple[int, ...]


class Perm(tuple):
    """An immutable permutation of 1..n, stored as a tuple of its values.

    Perms compare and hash like plain tuples, so ``Perm.parse("132") == (1, 3, 2)``.
    The empty permutation is the null pattern and renders as ``""``.
    """

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()):
        t = tuple.__new__(cls, values)
        if sorted(t) != list(range(1, len(t) + 1)):
            raise InvalidInputError(f"{tuple(t)} is not a permutation of 1..{len(t)}")
        return t

    @classmethod
    def _trusted(cls, values: Iterable[int]) -> "Perm":
        return tuple.__new__(cls, values)

    @classmethod
    def parse(cls, text: str) -> "Perm":
        """Parse ``"5274316"`` (n <= 9) or ``"10 2 3 ..."`` / ``"1,2,3"``."""
        text = text.strip()
        if text in ("", "ε", "eps"):
            return cls._trusted(())
        if any(c.isspace() or c == "," for c in text):
            values = []
            for tok in text.replace(",", " ").split():
                if not tok.isdigit():
                    pos = text.find(tok)
                    raise InvalidInputError(f"invalid token {tok!r} at position {pos} in {text!r}")
                values.append(int(tok))
        else:
            for pos, c in enumerate(text):
                if not c.isdigit():
                    raise InvalidInputError(f"invalid character {c!r} at position {pos} in {text!r}")
            values = [int(c) for c in text]
        seen = set()
        for pos, x in enumerate(values):
            if not 1 <= x <= len(values):
                raise InvalidInputError(
                    f"value {x} at position {pos} outside 1..{len(values)} in {text!r}")
            if x in seen:
                raise InvalidInputError(f"duplicate value {x} at position {pos} in {text!r}")
            seen.add(x)
        return cls._trusted(values)

    @property
    def n(self) -> int:
        return len(self)

    def __str__(self) -> str:
        if len(self) <= 9:
            return "".join(map(str, self))
        return " ".join(map(str, self))

    def __repr__(self) -> str:
        return f"Perm({str(self)!r})"

    def reverse(self) -> "Perm":
        return Perm._trusted(self[::-1])

    def complement(self) -> "Perm":
        m = len(self) + 1
        return Perm._trusted(m - x for x in self)

    def inversions(self) -> int:
        return sum(1 for a, b in itertools.combinations(self, 2) if a > b)


def as_perm(p) -> Perm:
    if isinstance(p, Perm):
        return p
    if isinstance(p, str):
        return Perm.parse(p)
    return Perm(p)


def identity(n: int) -> Perm:
    return Perm._trusted(range(1, n + 1))


def reduce(word: Sequence[int]) -> Perm:
    """Rank each entry among the word's entries: (2, 8, 4) -> 132."""
    order = sorted(range(len(word)), key=word.__getitem__)
    out = [0] * len(word)
    for rank, i in enumerate(order, 1):
        out[i] = rank
    for a, b in zip(order, order[1:]):
        if word[a] == word[b]:
            raise InvalidInputError(f"duplicate entry {word[a]} in word {tuple(word)}")
    return Perm._trusted(out)


def check_subset(A: Sequence[int], n: int) -> IndexSubset:
    A = tuple(A)
    for k, j in enumerate(A):
        if not 1 <= j <= n:
            raise InvalidInputError(f"index {j} out of range 1..{n}")
        if k and A[k - 1] >= j:
            raise InvalidInputError(f"indices {A} are not strictly increasing")
    return A


def subsequence(perm: Sequence[int], A: Sequence[int]) -> tuple[int, ...]:
    """``(perm_j for j in A)`` in index order, without reducing."""
    A = check_subset(A, len(perm))
    return tuple(perm[j - 1] for j in A)


def _check_cap(n: int, cap: int | None) -> None:
    if n < 0:
        raise InvalidInputError(f"n must be non-negative, got {n}")
    cap = DEFAULT_SN_CAP if cap is None else cap
    if n > cap:
        raise CapacityError(f"n={n} exceeds the enumeration cap {cap} ({math.factorial(n)} permutations)")


def enumerate_sn(n: int, cap: int | None = None) -> Iterator[Perm]:
    """All n! permutations in lexicographic order."""
    _check_cap(n, cap)
    for p in itertools.permutations(range(1, n + 1)):
        yield Perm._trusted(p)


def unrank(n: int, rank: int) -> Perm:
    """The rank-th (0-based) permutation of S_n in lexicographic order."""
    pool = list(range(1, n + 1))
    out = []
    for k in range(n, 0, -1):
        f = math.factorial(k - 1)
        i, rank = divmod(rank, f)
        out.append(pool.pop(i))
    return Perm._trusted(out)


def next_permutation(p: Sequence[int]) -> Perm | None:
    """Lexicographic successor, or None for the last permutation."""
    a = list(p)
    i = len(a) - 2
    while i >= 0 and a[i] > a[i + 1]:
        i -= 1
    if i < 0:
        return None
    j = len(a) - 1
    while a[j] < a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    a[i + 1:] = reversed(a[i + 1:])
    return Perm._trusted(a)


def enumerate_sn_range(n: int, start: int, stop: int, cap: int | None = None) -> Iterator[Perm]:
    """Permutations with lexicographic ranks in [start, stop); used to shard scans."""
    _check_cap(n, cap)
    stop = min(stop, math.factorial(n))
    if start >= stop:
        return
    p = unrank(n, start)
    for _ in range(stop - start):
        yield p
        p = next_permutation(p)


def shard_ranges(total: int, shards: int) -> list[tuple[int, int]]:
    shards = max(1, min(shards, total or 1))
    step, extra = divmod(total, shards)
    out, lo = [], 0
    for s in range(shards):
        hi = lo + step + (1 if s < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def random_permutation(n: int, rng: random.Random | int | None = None) -> Perm:
    """Uniform sample via Fisher-Yates (``random.Random.shuffle``)."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    values = list(range(1, n + 1))
    rng.shuffle(values)
    return Perm._trusted(values)


def enumerate_subsets(n: int, d: int) -> Iterator[IndexSubset]:
    """All d-subsets of [n] as increasing tuples, lexicographic order."""
    if d < 0 or d > n:
        raise InvalidInputError(f"need 0 <= d <= n, got d={d}, n={n}")
    return itertools.combinations(range(1, n + 1), d)
