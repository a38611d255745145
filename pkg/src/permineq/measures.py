"""Probability measures on the subset lattice P(n) and on chains.

Subsets of [n] are bitmasks internally (bit i-1 <-> element i) and sorted
index tuples at the boundary.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import CapacityError, InvalidInputError, PreconditionError
from .numeric import EXACT, FLOAT, check_mode, convert, infer_mode, log_of
from .report import InequalityReport, build_report

ENUMERATION_CAP = 20
INCLUSION_EXCLUSION_CAP = 18
PAIR_SCAN_CAP = 10
FLOAT_RTOL = 1e-12


def to_mask(A: Iterable[int]) -> int:
    m = 0
    for i in A:
        m |= 1 << (i - 1)
    return m


def from_mask(m: int) -> tuple[int, ...]:
    out, i = [], 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def popcount(m: int) -> int:
    return bin(m).count("1")


def submasks(m: int):
    """All submasks of m, including 0 and m."""
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


@dataclass(frozen=True)
class SubsetMeasure:
    """Bernoulli(p) product measure on P(n), or an explicit weight table."""

    n: int
    p: Fraction | float | None = None
    table: Mapping[int, Fraction | float] | None = None  # bitmask -> weight

    def __post_init__(self):
        if (self.p is None) == (self.table is None):
            raise InvalidInputError("give exactly one of p or table")
        if self.p is not None and not 0 < self.p < 1:
            raise InvalidInputError(f"p must lie in (0, 1), got {self.p}")
        if self.table is not None:
            if self.n > ENUMERATION_CAP:
                raise CapacityError(f"explicit measures are limited to n <= {ENUMERATION_CAP}")
            full = (1 << self.n) - 1
            for m, w in self.table.items():
                if m & ~full:
                    raise InvalidInputError(f"subset {from_mask(m)} is not inside [{self.n}]")
                if w < 0:
                    raise InvalidInputError(f"negative weight {w} on {from_mask(m)}")
            total = sum(self.table.values())
            if isinstance(total, float):
                ok = abs(total - 1) <= 1e-12
            else:
                ok = total == 1
            if not ok:
                raise InvalidInputError(f"weights sum to {total}, not 1")

    @classmethod
    def bernoulli(cls, n: int, p) -> "SubsetMeasure":
        return cls(n, p=p)

    @classmethod
    def explicit(cls, n: int, weights: Mapping[Iterable[int], object]) -> "SubsetMeasure":
        table: dict[int, object] = {}
        for A, w in weights.items():
            m = to_mask(A)
            table[m] = table.get(m, 0) + w
        return cls(n, table=table)

    @classmethod
    def from_json(cls, data: dict | str) -> "SubsetMeasure":
        """``{n, entries: [{subset: [...], weight: "num/den" | float}]}``."""
        if isinstance(data, str):
            data = json.loads(data)
        weights = {}
        for e in data["entries"]:
            w = e["weight"]
            w = Fraction(w) if isinstance(w, str) else w
            weights[tuple(e["subset"])] = weights.get(tuple(e["subset"]), 0) + w
        return cls.explicit(int(data["n"]), weights)

    @property
    def is_bernoulli(self) -> bool:
        return self.p is not None

    def default_mode(self) -> str:
        if self.is_bernoulli:
            return infer_mode(self.p)
        return infer_mode(*self.table.values())

    def weight(self, mask: int, mode: str):
        if self.is_bernoulli:
            p = convert(self.p, mode)
            k = popcount(mask)
            return p ** k * (1 - p) ** (self.n - k)
        return convert(self.table.get(mask, 0), mode)

    def items(self, mode: str):
        """(mask, weight) over the support (all 2^n masks for Bernoulli)."""
        if self.is_bernoulli:
            if self.n > ENUMERATION_CAP:
                raise CapacityError(f"enumerating P({self.n}) exceeds the cap {ENUMERATION_CAP}")
            return ((m, self.weight(m, mode)) for m in range(1 << self.n))
        return ((m, convert(w, mode)) for m, w in sorted(self.table.items()))

    def describe(self) -> dict:
        if self.is_bernoulli:
            return {"kind": "bernoulli", "n": self.n, "p": str(self.p)}
        return {"kind": "explicit", "n": self.n, "support": len(self.table)}


def _mode_for(mu: SubsetMeasure, mode: str | None) -> str:
    return check_mode(mode) if mode else mu.default_mode()


def measure_of(mu: SubsetMeasure, A: Iterable[int], mode: str | None = None):
    A = tuple(A)
    if any(not 1 <= i <= mu.n for i in A):
        raise InvalidInputError(f"{A} is not a subset of [{mu.n}]")
    return mu.weight(to_mask(A), _mode_for(mu, mode))


def _blocker_masks(mu: SubsetMeasure, blockers) -> list[int]:
    masks = []
    for B in blockers:
        B = tuple(B)
        if any(not 1 <= i <= mu.n for i in B):
            raise InvalidInputError(f"blocker {B} is not a subset of [{mu.n}]")
        masks.append(to_mask(B))
    return sorted(set(masks))


def _avoids_all(A: int, masks: Sequence[int]) -> bool:
    for B in masks:
        if A & B == B:
            return False
    return True


def _nu_enumerate(mu: SubsetMeasure, masks: list[int], mode: str):
    if mu.is_bernoulli:
        # only coordinates inside the union of the blockers matter
        union = 0
        for B in masks:
            union |= B
        u = popcount(union)
        if u > ENUMERATION_CAP:
            raise CapacityError(f"blocker union of size {u} exceeds the enumeration cap")
        by_size = [0] * (u + 1)
        for S in submasks(union):
            if _avoids_all(S, masks):
                by_size[popcount(S)] += 1
        p = convert(mu.p, mode)
        q = 1 - p
        return sum(c * p ** k * q ** (u - k) for k, c in enumerate(by_size) if c)
    total = 0 if mode == EXACT else 0.0
    for A, w in mu.items(mode):
        if _avoids_all(A, masks):
            total += w
    return total


def _nu_inclusion_exclusion(mu: SubsetMeasure, masks: list[int], mode: str):
    if not mu.is_bernoulli:
        raise InvalidInputError("inclusion-exclusion applies to Bernoulli measures only")
    if len(masks) > INCLUSION_EXCLUSION_CAP:
        raise CapacityError(f"{len(masks)} blockers exceed the inclusion-exclusion cap")
    # signed count of blocker families by size of their union
    signed: dict[int, int] = {}
    for r in range(len(masks) + 1):
        sign = -1 if r % 2 else 1
        for fam in itertools.combinations(masks, r):
            u = 0
            for B in fam:
                u |= B
            k = popcount(u)
            signed[k] = signed.get(k, 0) + sign
    p = convert(mu.p, mode)
    return sum(c * p ** k for k, c in sorted(signed.items()) if c)


def nu(mu: SubsetMeasure, blockers, mode: str | None = None, method: str = "auto"):
    """mu-mass of the subsets A of [n] that contain no blocker as a subset."""
    mode = _mode_for(mu, mode)
    masks = _blocker_masks(mu, blockers)
    if method == "enumerate":
        return _nu_enumerate(mu, masks, mode)
    if method == "inclusion_exclusion":
        return _nu_inclusion_exclusion(mu, masks, mode)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    try:
        return _nu_enumerate(mu, masks, mode)
    except CapacityError:
        if mu.is_bernoulli and len(masks) <= INCLUSION_EXCLUSION_CAP:
            return _nu_inclusion_exclusion(mu, masks, mode)
        raise


def tail_mass(mu: SubsetMeasure, d: int, mode: str | None = None):
    """mu-mass of the subsets with fewer than d elements."""
    mode = _mode_for(mu, mode)
    if not 0 <= d <= mu.n + 1:
        raise InvalidInputError(f"need 0 <= d <= n+1, got d={d}")
    if mu.is_bernoulli:
        p = convert(mu.p, mode)
        q = 1 - p
        terms = [math.comb(mu.n, k) * p ** k * q ** (mu.n - k) for k in range(d)]
        return math.fsum(terms) if mode == FLOAT else sum(terms, Fraction(0))
    total = 0 if mode == EXACT else 0.0
    for A, w in mu.items(mode):
        if popcount(A) < d:
            total += w
    return total


def _leq(a, b, mode: str) -> bool:
    if mode == EXACT:
        return a <= b
    return a <= b * (1 + FLOAT_RTOL) or a <= b


def lattice_violation(elements: Sequence, weight: Callable, meet: Callable, join: Callable,
                      mode: str = EXACT):
    """First pair (x, y) with weight(x) weight(y) > weight(x meet y) weight(x join y), or None."""
    for i, x in enumerate(elements):
        wx = weight(x)
        for y in elements[i + 1:]:
            lhs = wx * weight(y)
            rhs = weight(meet(x, y)) * weight(join(x, y))
            if not _leq(lhs, rhs, mode):
                return x, y
    return None


def is_log_supermodular(mu: SubsetMeasure, mode: str | None = None, cap: int = PAIR_SCAN_CAP):
    """Brute-force pair scan on P(n). Returns (ok, first violating pair as index tuples)."""
    if mu.n > cap:
        raise CapacityError(f"pair scan over P({mu.n}) exceeds the cap {cap}")
    mode = _mode_for(mu, mode)
    elements = list(range(1 << mu.n))
    bad = lattice_violation(elements, lambda m: mu.weight(m, mode),
                            lambda a, b: a & b, lambda a, b: a | b, mode)
    if bad is None:
        return True, None
    return False, (from_mask(bad[0]), from_mask(bad[1]))


@dataclass(frozen=True)
class ChainMeasure:
    """Weights mu(A_0) .. mu(A_d) on a chain A_0 < ... < A_d."""

    weights: tuple

    def __post_init__(self):
        if any(w < 0 for w in self.weights):
            raise InvalidInputError(f"negative chain weight in {self.weights}")
        total = sum(self.weights)
        ok = abs(total - 1) <= 1e-12 if isinstance(total, float) else total == 1
        if not ok:
            raise InvalidInputError(f"chain weights sum to {total}, not 1")

    @classmethod
    def uniform(cls, d: int) -> "ChainMeasure":
        return cls(tuple(Fraction(1, d + 1) for _ in range(d + 1)))

    @property
    def d(self) -> int:
        return len(self.weights) - 1

    def default_mode(self) -> str:
        return infer_mode(*self.weights)


def chain_is_log_supermodular(weights: Sequence, mode: str = EXACT):
    """On a chain meet/join are min/max, so every pair is an equality."""
    idx = list(range(len(weights)))
    bad = lattice_violation(idx, lambda i: convert(weights[i], mode), min, max, mode)
    return (bad is None), bad


def _subset_leq(a: int, b: int) -> bool:
    return a & b == a


def fkg_check(elements: Sequence, mu: Mapping, functions: Sequence[Mapping],
              direction: str = "increasing", meet: Callable = None, join: Callable = None,
              leq: Callable = None, mode: str | None = None) -> InequalityReport:
    """Compare prod_g sum_x mu(x) g(x) with sum_x mu(x) prod_g g(x).

    Defaults treat elements as bitmask subsets ordered by inclusion. Both
    preconditions (log-supermodular mu, monotone g) are checked by brute force.
    """
    meet = meet or (lambda a, b: a & b)
    join = join or (lambda a, b: a | b)
    leq = leq or _subset_leq
    if direction not in ("increasing", "decreasing"):
        raise ValueError(f"direction must be increasing or decreasing, got {direction!r}")
    if mode is None:
        mode = infer_mode(*mu.values(), *(v for g in functions for v in g.values()))
    check_mode(mode)
    w = {x: convert(mu.get(x, 0), mode) for x in elements}
    gs = [{x: convert(g.get(x, 0), mode) for x in elements} for g in functions]

    bad = lattice_violation(list(elements), lambda x: convert(mu.get(x, 0), mode), meet, join, mode)
    if bad is not None:
        raise PreconditionError(f"measure is not log-supermodular at pair {bad}")
    for k, g in enumerate(gs):
        if any(g[x] < 0 for x in elements):
            raise PreconditionError(f"function {k} takes a negative value")
        for x in elements:
            for y in elements:
                if x != y and leq(x, y):
                    ok = g[x] <= g[y] if direction == "increasing" else g[x] >= g[y]
                    if not ok:
                        raise PreconditionError(
                            f"function {k} is not {direction} on the pair ({x}, {y})")

    one = Fraction(1) if mode == EXACT else 1.0
    lhs_log, lhs = 0.0, one
    for g in gs:
        e = sum((w[x] * g[x] for x in elements), 0 * one)
        lhs *= e
        lhs_log += log_of(e)
    rhs = 0 * one
    for x in elements:
        term = w[x]
        for g in gs:
            term *= g[x]
        rhs += term
    inputs = {"direction": direction, "functions": len(gs)}
    if mode == FLOAT:
        return build_report("FKG", inputs, lhs_log, log_of(rhs), mode)
    return build_report("FKG", inputs, log_of(lhs), log_of(rhs), mode,
                        lhs=lhs, rhs=rhs, exact_holds=lhs <= rhs)
