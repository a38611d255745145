"""Numeric checks of entropy boundedness and Shearer's lemma on explicit
finite distributions. Natural logarithms throughout."""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InvalidInputError, PreconditionError

PROB_FLOOR = 1e-15  # probabilities below this contribute nothing to entropy
MASS_TOL = 1e-12
CHECK_TOL = 1e-12


@dataclass(frozen=True)
class FiniteDistribution:
    outcomes: tuple
    probs: tuple[float, ...]

    def __post_init__(self):
        if len(self.outcomes) != len(self.probs):
            raise InvalidInputError("outcomes and probs differ in length")
        if len(set(self.outcomes)) != len(self.outcomes):
            raise InvalidInputError("outcomes must be distinct")
        _check_mass(self.probs)

    @classmethod
    def from_probs(cls, probs: Sequence[float]) -> "FiniteDistribution":
        return cls(tuple(range(len(probs))), tuple(float(p) for p in probs))

    @property
    def support_size(self) -> int:
        return sum(1 for p in self.probs if p > PROB_FLOOR)


@dataclass(frozen=True)
class JointDistribution:
    arity: int
    support: Mapping[tuple, float]

    def __post_init__(self):
        for t in self.support:
            if len(t) != self.arity:
                raise InvalidInputError(f"tuple {t} does not have arity {self.arity}")
        _check_mass(self.support.values())

    @classmethod
    def from_json(cls, data: dict | str) -> "JointDistribution":
        """``{arity, entries: [{tuple: [...], prob}]}``."""
        if isinstance(data, str):
            data = json.loads(data)
        support: Counter = Counter()
        for e in data["entries"]:
            support[tuple(e["tuple"])] += float(e["prob"])
        return cls(int(data["arity"]), dict(support))

    @classmethod
    def product(cls, marginals: Sequence[Sequence[float]]) -> "JointDistribution":
        """Independent coordinates with the given marginal probability vectors."""
        support = {}
        for t in _cartesian([range(len(m)) for m in marginals]):
            p = math.prod(m[i] for m, i in zip(marginals, t))
            if p:
                support[t] = p
        return cls(len(marginals), support)

    @property
    def probs(self) -> tuple[float, ...]:
        return tuple(self.support.values())

    def marginal(self, A: Iterable[int]) -> "JointDistribution":
        """Distribution of the coordinates in A (1-based, kept in the given order)."""
        A = tuple(A)
        if any(not 1 <= i <= self.arity for i in A):
            raise InvalidInputError(f"coordinates {A} not in [{self.arity}]")
        out: Counter = Counter()
        for t, p in self.support.items():
            out[tuple(t[i - 1] for i in A)] += p
        return JointDistribution(len(A), dict(out))

    def to_finite(self) -> FiniteDistribution:
        keys = tuple(self.support)
        return FiniteDistribution(keys, tuple(self.support[k] for k in keys))


def _cartesian(ranges):
    if not ranges:
        yield ()
        return
    for head in ranges[0]:
        for rest in _cartesian(ranges[1:]):
            yield (head,) + rest


def _check_mass(probs: Iterable[float]) -> None:
    probs = list(probs)
    if any(p < 0 for p in probs):
        raise InvalidInputError("negative probability")
    total = math.fsum(probs)
    if abs(total - 1) > MASS_TOL:
        raise InvalidInputError(f"probabilities sum to {total!r}, not 1")


def entropy(dist) -> float:
    """Shannon entropy in nats, with 0 log 0 = 0."""
    return -math.fsum(p * math.log(p) for p in dist.probs if p > PROB_FLOOR)


@dataclass(frozen=True)
class BoundReport:
    name: str
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs + CHECK_TOL

    def to_json(self) -> dict:
        return {"check": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "slack": self.slack, "holds": self.holds}


def boundedness_check(dist) -> BoundReport:
    """H(X) <= log #support."""
    n = sum(1 for p in dist.probs if p > PROB_FLOOR)
    return BoundReport("boundedness", entropy(dist), math.log(n))


def cover_multiplicity(cover: Sequence[Iterable[int]], m: int) -> list[int]:
    counts = [0] * (m + 1)
    for A in cover:
        for i in set(A):
            if not 1 <= i <= m:
                raise InvalidInputError(f"cover member {tuple(A)} leaves [{m}]")
            counts[i] += 1
    return counts[1:]


def shearer_check(joint: JointDistribution, cover: Sequence[Iterable[int]], t: int) -> BoundReport:
    """t H(X) <= sum over the cover of H(X(A)); every coordinate must be covered >= t times."""
    if t < 1:
        raise InvalidInputError(f"t must be positive, got {t}")
    for i, c in enumerate(cover_multiplicity(cover, joint.arity), 1):
        if c < t:
            raise PreconditionError(f"coordinate {i} is covered {c} < t={t} times")
    lhs = t * entropy(joint)
    rhs = math.fsum(entropy(joint.marginal(sorted(set(A)))) for A in cover)
    return BoundReport("shearer", lhs, rhs)


def parse_cover(text: str) -> list[tuple[int, ...]]:
    """``"1,2;1,3;2,3"`` -> [(1, 2), (1, 3), (2, 3)]."""
    out = []
    for pos, part in enumerate(text.split(";")):
        try:
            out.append(tuple(int(x) for x in part.split(",") if x.strip()))
        except ValueError:
            raise InvalidInputError(f"bad cover member {part!r} at position {pos}")
    return out


def random_distribution(rng, m: int, sparse: float = 0.0) -> FiniteDistribution:
    """Random point of the simplex; with ``sparse`` > 0 some entries are zeroed."""
    w = [rng.expovariate(1.0) for _ in range(m)]
    if sparse:
        w = [x if rng.random() >= sparse else 0.0 for x in w]
        if not any(w):
            w[rng.randrange(m)] = 1.0
    s = math.fsum(w)
    return FiniteDistribution.from_probs([x / s for x in w])


def random_joint(rng, arity: int, alphabet: int = 2, sparse: float = 0.0) -> JointDistribution:
    keys = list(_cartesian([range(alphabet)] * arity))
    dist = random_distribution(rng, len(keys), sparse)
    return JointDistribution(arity, {k: p for k, p in zip(keys, dist.probs) if p > 0})
