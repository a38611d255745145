#!/usr/bin/env python3
"""Exhaustive sweeps of the four inequalities and the lemma at small n.

Usage: python scripts/exhaustive_checks.py [--n 6] [--p 1/2]
"""
import argparse
import time
from fractions import Fraction

from permineq.measures import SubsetMeasure
from permineq.perm import enumerate_sn
from permineq.verify import summarize, sweep_lemma3, sweep_t1a, sweep_t1b, verify_t2a


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--p", type=Fraction, default=Fraction(1, 2))
    args = ap.parse_args()
    n = args.n

    def show(name, reports):
        t0 = time.perf_counter()
        s = summarize(reports)
        print(f"{name:<28} {s['holds']:>8}/{s['total']:<8} violated={s['violated']} "
              f"min_slack={s['min_slack_log']:.4g}  ({time.perf_counter() - t0:.1f}s)")

    show(f"T1a  S_{n}", sweep_t1a(enumerate_sn(n)))
    show(f"T1b  S_{n}, |v| in 4..{n}", sweep_t1b(enumerate_sn(n), list(range(4, n + 1))))
    m = min(n, 5)
    show(f"L3   S_{m}, d in 2..3", sweep_lemma3(enumerate_sn(m), [2, 3], args.p))
    mu = SubsetMeasure.bernoulli(m, args.p)
    show(f"T2a  n={m}, |v| in 2..3", (verify_t2a(m, v, mu) for d in (2, 3) for v in enumerate_sn(d)))


if __name__ == "__main__":
    main()
