"""Evaluate both sides of the containment inequalities and report verdicts.

Theorem ids: T1a (pattern-set growth), T1b (occurrence product bound),
T2a (location-class correlation), T2b (chain correlation), L3 (fixed-host
correlation lemma).
"""
from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .census import ChainSpec, OccurrenceCensus, census, conditional_avoidance_counts
from .errors import InvalidInputError, PreconditionError
from .measures import ChainMeasure, SubsetMeasure, is_log_supermodular, nu, tail_mass
from .numeric import EXACT, check_mode, convert, infer_mode, log_of, logs_close, logsumexp
from .patterns import contained_patterns, occ, occurrence_set
from .perm import Perm, as_perm, enumerate_sn
from .report import INDETERMINATE, VIOLATED, InequalityReport, build_report


def verify_t1a(pi, ell: int, d: int, mode: str = EXACT) -> InequalityReport:
    """c_d(pi) <= (c_ell(pi) * C(d, ell)) ** (d / ell)."""
    pi = as_perm(pi)
    check_mode(mode)
    if not 1 <= ell < d < len(pi):
        raise InvalidInputError(f"need 1 <= ell < d < n, got ell={ell}, d={d}, n={len(pi)}")
    cd = len(contained_patterns(pi, d))
    base = len(contained_patterns(pi, ell)) * math.comb(d, ell)
    inputs = {"perm": str(pi), "ell": ell, "d": d}
    if mode == EXACT:
        # compare cd**ell with base**d: both integers
        big = base ** d
        return build_report("T1a", inputs, log_of(cd), log_of(big) / ell, mode,
                            lhs=cd, exact_holds=cd ** ell <= big)
    return build_report("T1a", inputs, math.log(cd), Fraction(d, ell) * math.log(base), mode, lhs=cd)


class OccCache:
    """Memo for occ(host, pattern) and C_ell(pattern) across a sweep."""

    def __init__(self):
        self._occ: dict[tuple[Perm, Perm], int] = {}
        self._pats: dict[tuple[Perm, int], tuple[Perm, ...]] = {}

    def occ(self, host: Perm, pattern: Perm) -> int:
        key = (host, pattern)
        val = self._occ.get(key)
        if val is None:
            val = self._occ[key] = occ(host, pattern)
        return val

    def patterns(self, host: Perm, ell: int) -> tuple[Perm, ...]:
        key = (host, ell)
        val = self._pats.get(key)
        if val is None:
            val = self._pats[key] = tuple(sorted(contained_patterns(host, ell)))
        return val


def verify_t1b(pi, v, ell: int, mode: str = EXACT, cache: OccCache | None = None) -> InequalityReport:
    """occ(pi, v) <= prod over w in C_ell(v) of occ(pi, w) ** (occ(v, w) / C(d-1, ell-1))."""
    pi, v = as_perm(pi), as_perm(v)
    check_mode(mode)
    d = len(v)
    if not 1 < ell < d <= len(pi):
        raise InvalidInputError(f"need 1 < ell < d <= n, got ell={ell}, d={d}, n={len(pi)}")
    cache = cache or OccCache()
    denom = math.comb(d - 1, ell - 1)
    lhs = cache.occ(pi, v)
    factors = [(cache.occ(pi, w), cache.occ(v, w)) for w in cache.patterns(v, ell)]
    inputs = {"perm": str(pi), "pattern": str(v), "ell": ell}
    if mode == EXACT:
        # raise both sides to the power C(d-1, ell-1) to stay in the integers
        rhs_pow = math.prod(a ** e for a, e in factors)
        return build_report("T1b", inputs, log_of(lhs), log_of(rhs_pow) / denom, mode,
                            lhs=lhs, exact_holds=lhs ** denom <= rhs_pow)
    rhs_log = 0.0
    for a, e in factors:
        rhs_log += Fraction(e, denom) * (math.log(a) if a else -math.inf)
    return build_report("T1b", inputs, log_of(lhs), rhs_log, mode, lhs=lhs)


def _measure_mode(mu: SubsetMeasure, mode: str | None) -> str:
    return check_mode(mode) if mode else mu.default_mode()


def _require_log_supermodular(mu: SubsetMeasure) -> None:
    if mu.is_bernoulli:
        return
    ok, pair = is_log_supermodular(mu)
    if not ok:
        raise PreconditionError(f"measure is not log-supermodular; violating pair {pair}")


class _Product:
    """Running product of non-negative values: exact value and log companion."""

    def __init__(self, mode: str):
        self.mode = mode
        self.value = Fraction(1) if mode == EXACT else None
        self.log = 0.0

    def mul(self, base, power: int = 1) -> None:
        if power == 0:
            return
        if self.mode == EXACT:
            self.value *= base ** power
        self.log += power * log_of(base)

    def final_log(self) -> float:
        return log_of(self.value) if self.mode == EXACT else self.log


def verify_t2a(n: int, v, mu: SubsetMeasure, mode: str | None = None,
               cen: OccurrenceCensus | None = None, threads: int = 1) -> InequalityReport:
    """prod over location classes of nu(class) ** (class size) <= mu(|A| < d).

    The left side is computed twice, grouped by class from the census and
    streamed over S_n one permutation at a time; the two must agree.
    """
    v = as_perm(v)
    mode = _measure_mode(mu, mode)
    d = len(v)
    if mu.n != n:
        raise InvalidInputError(f"measure lives on P({mu.n}), expected P({n})")
    _require_log_supermodular(mu)
    if cen is None:
        cen = census(n, v, classes=True, threads=threads)
    if cen.by_location_class is None:
        raise InvalidInputError("census lacks the location-class map")

    nus = {}
    grouped = _Product(mode)
    for key, count in cen.by_location_class.items():
        nus[key] = nu(mu, key, mode)
        grouped.mul(nus[key], count)

    streamed = _Product(mode)
    for pi in enumerate_sn(n):
        locs = occurrence_set(pi, v).locations
        if locs:
            val = nus.get(locs)
            if val is None:
                val = nus[locs] = nu(mu, locs, mode)
            streamed.mul(val)

    if mode == EXACT:
        if grouped.value != streamed.value:
            raise AssertionError("grouped and streamed products differ")
    elif not logs_close(grouped.log, streamed.log):
        raise AssertionError(f"grouped {grouped.log!r} vs streamed {streamed.log!r}")

    rhs = tail_mass(mu, d, mode)
    inputs = {"n": n, "pattern": str(v), "measure": mu.describe()}
    details = {"classes": len(cen.by_location_class), "streamed_lhs_log": streamed.final_log()}
    if mode == EXACT:
        return build_report("T2a", inputs, log_of(grouped.value), log_of(rhs), mode,
                            lhs=grouped.value, rhs=rhs,
                            exact_holds=grouped.value <= rhs, details=details)
    return build_report("T2a", inputs, grouped.log, log_of(rhs), mode, details=details)


def verify_lemma3(pi, d: int, mu: SubsetMeasure, mode: str | None = None) -> InequalityReport:
    """prod over v in C_d(pi) of nu(B_pi(v)) <= mu(|A| < d)."""
    pi = as_perm(pi)
    mode = _measure_mode(mu, mode)
    if not 1 <= d <= len(pi):
        raise InvalidInputError(f"need 1 <= d <= n, got d={d}, n={len(pi)}")
    if mu.n != len(pi):
        raise InvalidInputError(f"measure lives on P({mu.n}), expected P({len(pi)})")
    _require_log_supermodular(mu)
    prod = _Product(mode)
    for v in sorted(contained_patterns(pi, d)):
        prod.mul(nu(mu, occurrence_set(pi, v).locations, mode))
    rhs = tail_mass(mu, d, mode)
    inputs = {"perm": str(pi), "d": d, "measure": mu.describe()}
    if mode == EXACT:
        return build_report("L3", inputs, log_of(prod.value), log_of(rhs), mode,
                            lhs=prod.value, rhs=rhs, exact_holds=prod.value <= rhs)
    return build_report("L3", inputs, prod.log, log_of(rhs), mode)


def normalize_x(x, d: int) -> dict[int, object]:
    """x as a scalar or the sequence x_2..x_d -> {ell: x_ell}; checks 0 < x_d <= ... <= x_2 < 1."""
    if isinstance(x, (int, float, Fraction)):
        xs = [x] * (d - 1)
    else:
        xs = list(x)
    if len(xs) != d - 1:
        raise InvalidInputError(f"expected {d - 1} values x_2..x_{d}, got {len(xs)}")
    out = {ell: val for ell, val in zip(range(2, d + 1), xs)}
    for ell, val in out.items():
        if not 0 < val < 1:
            raise InvalidInputError(f"x_{ell} = {val} is not in (0, 1)")
    for ell in range(2, d):
        if out[ell + 1] > out[ell]:
            raise InvalidInputError(f"x_{ell + 1} = {out[ell + 1]} exceeds x_{ell} = {out[ell]}")
    return out


def verify_t2b(n: int, chain: ChainSpec, weights, x, mode: str | None = None,
               counts: dict[int, int] | None = None) -> InequalityReport:
    """Chain correlation bound with f_i = #pi avoiding v^i while containing v^(i-1)."""
    d = chain.d
    if d < 2:
        raise InvalidInputError("chain needs a pattern of length >= 2")
    if not isinstance(weights, ChainMeasure):
        weights = ChainMeasure(tuple(weights))
    if weights.d != d:
        raise InvalidInputError(f"expected {d + 1} chain weights, got {len(weights.weights)}")
    xs = normalize_x(x, d)
    if mode is None:
        mode = infer_mode(*weights.weights, *xs.values())
    check_mode(mode)
    if counts is None:
        counts = conditional_avoidance_counts(n, chain)
    w = [convert(m, mode) for m in weights.weights]
    xs = {ell: convert(val, mode) for ell, val in xs.items()}

    bases = {i: sum(w[:i]) + sum(xs[ell] * w[ell] for ell in range(i, d + 1))
             for i in range(2, d + 1)}
    lhs = _Product(mode)
    for i in range(2, d + 1):
        lhs.mul(bases[i], counts[i])

    term_logs, rhs = [], 0
    for i in range(d + 1):
        log_term = log_of(w[i])
        term = w[i]
        for ell in range(2, i + 1):
            if counts[ell]:
                log_term += counts[ell] * log_of(xs[ell])
                if mode == EXACT:
                    term *= xs[ell] ** counts[ell]
        term_logs.append(log_term)
        if mode == EXACT:
            rhs += term

    inputs = {"n": n, "pattern": str(chain.pattern),
              "chain": [list(A) for A in chain.subsets],
              "weights": [str(m) for m in weights.weights],
              "x": [str(xs[ell]) for ell in range(2, d + 1)]}
    details = {"counts": {str(i): c for i, c in counts.items()}}
    if mode == EXACT:
        return build_report("T2b", inputs, log_of(lhs.value), log_of(rhs), mode,
                            lhs=lhs.value, rhs=rhs, exact_holds=lhs.value <= rhs, details=details)
    return build_report("T2b", inputs, lhs.log, logsumexp(term_logs), mode, details=details)


def conjecture_scan(n: int, d: int, mu: SubsetMeasure, mode: str | None = None,
                    threads: int = 1) -> list[dict]:
    """T2a slack for every v in S_d next to its inversion count. No verdict on the trend."""
    rows = []
    for v in enumerate_sn(d):
        rep = verify_t2a(n, v, mu, mode, threads=threads)
        rows.append({"pattern": str(v), "inversions": v.inversions(),
                     "lhs_log": rep.lhs_log, "rhs_log": rep.rhs_log,
                     "slack_log": rep.slack_log, "holds": rep.verdict})
    return rows


# sweeps ------------------------------------------------------------------

def sweep_t1a(perms: Iterable[Perm], mode: str = EXACT) -> Iterator[InequalityReport]:
    for pi in perms:
        n = len(pi)
        for d in range(2, n):
            for ell in range(1, d):
                yield verify_t1a(pi, ell, d, mode)


def sweep_t1b(perms: Iterable[Perm], lengths: Sequence[int], mode: str = EXACT,
              cache: OccCache | None = None) -> Iterator[InequalityReport]:
    """Every pi given, every v in S_d for d in lengths (d <= n), every 1 < ell < d."""
    patterns = [v for d in lengths for v in enumerate_sn(d)]
    for pi in perms:
        # per-host memo; pattern-side entries are cheap to recompute
        local = cache or OccCache()
        for v in patterns:
            if len(v) > len(pi):
                continue
            for ell in range(2, len(v)):
                yield verify_t1b(pi, v, ell, mode, local)


def sweep_lemma3(perms: Iterable[Perm], ds: Sequence[int], p, mode: str | None = None
                 ) -> Iterator[InequalityReport]:
    for pi in perms:
        mu = SubsetMeasure.bernoulli(len(pi), p)
        for d in ds:
            if d <= len(pi):
                yield verify_lemma3(pi, d, mu, mode)


def summarize(reports: Iterable[InequalityReport]) -> dict:
    tally = Counter()
    min_slack = math.inf
    for r in reports:
        tally[r.verdict] += 1
        min_slack = min(min_slack, r.slack_log)
    return {"total": sum(tally.values()), "holds": tally["holds"],
            "violated": tally[VIOLATED], "indeterminate": tally[INDETERMINATE],
            "min_slack_log": min_slack}
