#!/usr/bin/env python3
"""Slack of the location-class correlation bound for every pattern of a given
length, tabulated against its inversion count. Exploratory: prints the
Spearman correlation between slack and disorder and asserts nothing.

Usage: python scripts/conjecture_scan.py --n 6 --d 3 --p 1/2
"""
import argparse
from fractions import Fraction

from scipy.stats import spearmanr

from permineq.measures import SubsetMeasure
from permineq.verify import conjecture_scan


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--p", type=Fraction, default=Fraction(1, 2))
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    mu = SubsetMeasure.bernoulli(args.n, args.p)
    rows = conjecture_scan(args.n, args.d, mu, threads=args.threads)
    rows.sort(key=lambda r: (r["inversions"], r["pattern"]))
    print(f"{'pattern':>10} {'inv':>4} {'slack_log':>12}")
    for r in rows:
        print(f"{r['pattern']:>10} {r['inversions']:>4} {r['slack_log']:>12.6f}")
    if len(rows) > 2:
        rho, pval = spearmanr([r["inversions"] for r in rows], [r["slack_log"] for r in rows])
        print(f"spearman(inversions, slack) = {rho:.3f} (p = {pval:.3g})")


if __name__ == "__main__":
    main()
