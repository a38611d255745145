"""Exit criteria. Each test records one PASS/FAIL line shown in the terminal summary."""
import io
import math
import random
import time
from fractions import Fraction

from permineq import cli
from permineq.census import census, induced_chain
from permineq.entropy import (FiniteDistribution, JointDistribution, boundedness_check,
                              random_distribution, random_joint, shearer_check)
from permineq.experiments import sample_hosts, simulate_fig1, t2b_trials
from permineq.measures import ChainMeasure, SubsetMeasure
from permineq.numeric import EXACT, FLOAT, logs_close
from permineq.patterns import contained_patterns, occurrence_oracle, occurrence_set
from permineq.perm import Perm, enumerate_sn, reduce
from permineq.report import HOLDS
from permineq.verify import (OccCache, sweep_t1a, sweep_t1b, verify_lemma3, verify_t1a,
                             verify_t1b, verify_t2a, verify_t2b)

P = Perm.parse
F = Fraction
REF_CHAIN = [(2,), (2, 3), (2, 3, 5), (2, 3, 5, 6), (2, 3, 4, 5, 6)]
TOL = 1e-12


def test_c1_worked_examples(record):
    chain = induced_chain(P("143265"), REF_CHAIN)
    checks = [
        reduce((2, 8, 4)) == P("132"),
        occurrence_set(P("12435"), P("21")).locations == ((3, 4),),
        len(occurrence_set(P("12435"), P("21"))) == 1,
        contained_patterns(P("1324"), 3) == {P("123"), P("132"), P("213")},
        contained_patterns(P("1234"), 3) == {P("123")},
        [str(v) for v in chain.induced] == ["", "1", "21", "213", "2143", "32154", "143265"],
    ]
    ok = all(checks)
    record(1, f"worked examples exact ({sum(checks)}/{len(checks)})", ok)
    assert ok


def test_c2_random_host_simulation(record):
    t0 = time.perf_counter()
    rows = simulate_fig1(n=20, samples=200, patterns=("5274316", "1234765"), ell=3)
    elapsed = time.perf_counter() - t0
    held = sum(r["holds"] == HOLDS for r in rows)
    hosts = sample_hosts(20, 200)
    spot = random.Random(0).sample(range(200), 10)
    by_key = {(r["pattern"], r["sample_index"]): r["lhs"] for r in rows}
    spot_ok = all(by_key[v, k] == len(occurrence_oracle(hosts[k], P(v)))
                  for v in ("5274316", "1234765") for k in spot)
    ok = len(rows) == 400 and held == 400 and elapsed < 60 and spot_ok
    record(2, f"simulation holds {held}/400 in {elapsed:.2f}s (<60s); oracle spot checks "
              f"{'match' if spot_ok else 'MISMATCH'}", ok)
    assert ok


def test_c3_exhaustive_t1(record):
    t0 = time.perf_counter()
    a = list(sweep_t1a(enumerate_sn(6)))
    b_total = b_held = 0
    for rep in sweep_t1b(enumerate_sn(6), [4, 5]):
        b_total += 1
        b_held += rep.verdict == HOLDS
    elapsed = time.perf_counter() - t0
    a_held = sum(r.verdict == HOLDS for r in a)
    # all 1 <= ell < d < 6: 10 pairs; S_4 has 2 ell values, S_5 has 3
    expected_b = 720 * (24 * 2 + 120 * 3)
    ok = a_held == len(a) == 7200 and b_held == b_total == expected_b and elapsed < 300
    record(3, f"T1a {a_held}/{len(a)}, T1b {b_held}/{b_total} over S_6 in {elapsed:.1f}s (<300s)", ok)
    assert ok


def test_c4_exhaustive_t2a_lemma(record):
    n, total, held, agree = 5, 0, 0, True
    for p in (F(1, 4), F(1, 2), F(3, 4)):
        mu = SubsetMeasure.bernoulli(n, p)
        for d in (2, 3):
            for v in enumerate_sn(d):
                rep = verify_t2a(n, v, mu, EXACT)  # raises if grouped != streamed
                total += 1
                held += rep.verdict == HOLDS and rep.mode == EXACT
                agree &= rep.details["streamed_lhs_log"] == rep.lhs_log
    mu = SubsetMeasure.bernoulli(n, F(1, 2))
    l_total = l_held = 0
    for pi in enumerate_sn(n):
        for d in (2, 3):
            rep = verify_lemma3(pi, d, mu, EXACT)
            l_total += 1
            l_held += rep.verdict == HOLDS
    ok = held == total == 24 and l_held == l_total == 240 and agree
    record(4, f"T2a exact {held}/{total}, lemma {l_held}/{l_total}, grouped == streamed", ok)
    assert ok


def test_c5_t2b(record):
    chain = induced_chain(P("143265"), REF_CHAIN)
    ref = verify_t2b(6, chain, ChainMeasure.uniform(6), F(1, 2))
    ch4 = induced_chain(P("2143"), [(1,), (1, 2), (1, 2, 3)])
    trials = t2b_trials(4, ch4, 500)
    held = sum(r.verdict == HOLDS for r in trials)
    ok = ref.verdict == HOLDS and held == 500
    record(5, f"reference chain at n=6 {ref.verdict}; random trials {held}/500", ok)
    assert ok


def test_c6_oracle_equivalence(record):
    pairs = mismatches = 0
    for n in range(0, 7):
        for pi in enumerate_sn(n):
            for d in range(0, min(n, 4) + 1):
                for v in enumerate_sn(d):
                    pairs += 1
                    mismatches += occurrence_set(pi, v) != occurrence_oracle(pi, v)
    ok = mismatches == 0
    record(6, f"occurrence_set == oracle on {pairs} pairs (n <= 6, d <= 4); {mismatches} mismatches", ok)
    assert ok


def test_c7_census_regressions(record):
    catalan_ok = all([census(n, v, classes=False).avoiders for n in range(1, 6)] == [1, 2, 5, 14, 42]
                     for v in enumerate_sn(3))
    sums_ok = True
    for n in range(1, 7):
        for d in range(1, min(n, 4) + 1):
            for v in enumerate_sn(d):
                sums_ok &= sum(census(n, v, classes=(n <= 5)).by_count.values()) == math.factorial(n)
    ok = catalan_ok and sums_ok
    record(7, f"Catalan avoiders {'ok' if catalan_ok else 'WRONG'}; sum_r f_r = n! {'ok' if sums_ok else 'WRONG'}", ok)
    assert ok


def test_c8_entropy(record):
    rng = random.Random(8)
    bounded = all(boundedness_check(random_distribution(rng, rng.randint(1, 8), sparse=0.2)).holds
                  for _ in range(1000))
    cover = [(1, 2), (1, 3), (2, 3)]
    shearer = all(shearer_check(random_joint(rng, 3, sparse=0.2), cover, 2).holds for _ in range(1000))
    uni = boundedness_check(FiniteDistribution.from_probs([1 / 6] * 6))
    cube = JointDistribution(3, {(a, b, c): 0.125 for a in (0, 1) for b in (0, 1) for c in (0, 1)})
    uni_sh = shearer_check(cube, cover, 2)
    eq = abs(uni.slack) <= TOL and abs(uni_sh.slack) <= TOL
    ok = bounded and shearer and eq
    record(8, f"boundedness 1000 {'ok' if bounded else 'FAIL'}, Shearer 1000 {'ok' if shearer else 'FAIL'}, "
              f"uniform equality within 1e-12 {'ok' if eq else 'FAIL'}", ok)
    assert ok


def _pairs_n_le_5():
    for pi in enumerate_sn(5):
        yield from ((verify_t1a(pi, ell, d, EXACT), verify_t1a(pi, ell, d, FLOAT))
                    for d in range(2, 5) for ell in range(1, d))
        for d in (3, 4, 5):
            for v in enumerate_sn(d):
                for ell in range(2, d):
                    yield verify_t1b(pi, v, ell, EXACT, OccCache()), verify_t1b(pi, v, ell, FLOAT, OccCache())
        for d in (1, 2, 3):
            yield (verify_lemma3(pi, d, SubsetMeasure.bernoulli(5, F(1, 2))),
                   verify_lemma3(pi, d, SubsetMeasure.bernoulli(5, 0.5)))
    for n in (3, 4, 5):
        for p in ("1/4", "1/2", "3/4"):
            for d in (2, 3):
                for v in enumerate_sn(d):
                    yield (verify_t2a(n, v, SubsetMeasure.bernoulli(n, F(p))),
                           verify_t2a(n, v, SubsetMeasure.bernoulli(n, float(F(p)))))
    rng = random.Random(9)
    ch = induced_chain(P("2143"), [(1,), (1, 2), (1, 2, 3)])
    for n in (2, 3, 4, 5):
        for _ in range(20):
            w = [F(rng.randint(1, 9)) for _ in range(5)]
            w = [x / sum(w) for x in w]
            xs = sorted((F(rng.randint(1, 99), 100) for _ in range(3)), reverse=True)
            yield (verify_t2b(n, ch, ChainMeasure(tuple(w)), xs, EXACT),
                   verify_t2b(n, ch, ChainMeasure(tuple(w)), xs, FLOAT))


def test_c9_backend_agreement(record):
    count = bad = 0
    for a, b in _pairs_n_le_5():
        count += 1
        assert a.mode == EXACT and b.mode == FLOAT
        if not (logs_close(a.lhs_log, b.lhs_log, TOL) and logs_close(a.rhs_log, b.rhs_log, TOL)):
            bad += 1
    ok = bad == 0
    record(9, f"exact vs float (lhs_log, rhs_log) within 1e-12 on {count} report pairs; {bad} disagree", ok)
    assert ok


CLI_RUNS = [
    ["occ", "--perm", "5274316", "--pattern", "213", "--locations"],
    ["census", "--n", "5", "--v", "132", "--classes"],
    ["census", "--n", "5", "--v", "132", "--classes", "--format", "csv"],
    ["verify", "t1a", "--n", "5", "--exhaustive"],
    ["verify", "t1b", "--n", "8", "--samples", "10", "--d", "4"],
    ["verify", "t2a", "--n", "4", "--v", "21", "--p", "0.3"],
    ["verify", "t2b", "--v", "2143", "--n", "4", "--samples", "20"],
    ["verify", "lemma3", "--n", "5", "--exhaustive", "--d", "2,3", "--p", "1/2", "--format", "csv"],
    ["simulate", "--samples", "30"],
    ["scan", "--n", "5", "--d", "3"],
    ["entropy", "random", "--samples", "30"],
]


def test_c10_determinism(record):
    def run(argv):
        buf = io.StringIO()
        code = cli.main(argv, out=buf)
        return code, buf.getvalue()
    same = [run(a) == run(a) for a in CLI_RUNS]
    ok = all(same)
    record(10, f"byte-identical repeated CLI output {sum(same)}/{len(same)}", ok)
    assert ok
