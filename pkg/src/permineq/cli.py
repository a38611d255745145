"""Command-line interface.

Exit codes: 0 success, 2 bad input, 3 capacity exceeded, 4 some inequality
violated, 5 some verdict indeterminate in float mode.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import random
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from .census import census, induced_chain, parse_chain
from .entropy import (FiniteDistribution, JointDistribution, boundedness_check, entropy,
                      parse_cover, random_distribution, random_joint, shearer_check)
from .errors import CapacityError, InvalidInputError, PreconditionError
from .experiments import DEFAULT_SEED, FIG1_PATTERNS, sample_hosts, simulate_fig1, t2b_trials
from .measures import ChainMeasure, SubsetMeasure
from .numeric import EXACT, FLOAT, parse_number
from .patterns import occurrence_set
from .perm import DEFAULT_SN_CAP, Perm, enumerate_sn
from .report import VIOLATED, json_float
from .verify import (OccCache, conjecture_scan, summarize, sweep_lemma3, sweep_t1a,
                     sweep_t1b, verify_lemma3, verify_t1a, verify_t1b, verify_t2a, verify_t2b)

EXIT_OK, EXIT_INPUT, EXIT_CAPACITY, EXIT_VIOLATED, EXIT_INDETERMINATE = 0, 2, 3, 4, 5
THREADS_ENV = "PERMINEQ_THREADS"
SCHEMA_DIR = Path(__file__).parent / "schemas"

REPORT_COLUMNS = ["theorem_id", "inputs", "lhs_log", "rhs_log", "holds", "slack_log", "mode",
                  "lhs_exact", "rhs_exact"]


def _perm(text: str) -> Perm:
    try:
        return Perm.parse(text)
    except InvalidInputError as e:
        raise argparse.ArgumentTypeError(str(e))


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}")


def _number(text: str):
    try:
        return parse_number(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _number_list(text: str) -> list:
    return [_number(t) for t in text.replace(",", " ").split()]


def _coerce(value, mode: str | None):
    """Decimals parse as floats; exact mode turns their literal text into a rational."""
    if mode == EXACT and isinstance(value, float):
        return Fraction(repr(value))
    if mode == FLOAT:
        return float(value)
    return value


# output ------------------------------------------------------------------

def _dump_json(obj, args) -> str:
    if getattr(args, "timestamp", False):
        obj = dict(obj, generated_at=datetime.now(timezone.utc).isoformat())
    return json.dumps(obj, indent=2) + "\n"


def _dump_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_csv_cell(r.get(h)) for h in header])
    return buf.getvalue()


def _csv_cell(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return json_float(x) if math.isinf(x) else repr(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (dict, list)):
        return json.dumps(x, separators=(",", ":"))
    return x


def _emit_reports(args, command: str, reports) -> int:
    reports = list(reports)
    summary = summarize(reports)
    summary["min_slack_log"] = json_float(summary["min_slack_log"])
    if args.format == "csv":
        out = _dump_csv(REPORT_COLUMNS, [r.to_json() for r in reports]) if not args.summary_only \
            else _dump_csv(list(summary), [summary])
    else:
        doc = {"command": command, "summary": summary}
        if not args.summary_only:
            doc["reports"] = [r.to_json() for r in reports]
        out = _dump_json(doc, args)
    args.out.write(out)
    if summary["violated"]:
        return EXIT_VIOLATED
    if summary["indeterminate"]:
        return EXIT_INDETERMINATE
    return EXIT_OK


# commands ----------------------------------------------------------------

def cmd_occ(args) -> int:
    oc = occurrence_set(args.perm, args.pattern)
    row = {"perm": str(args.perm), "pattern": str(args.pattern), "occ": len(oc)}
    if args.locations:
        row["locations"] = [list(B) for B in oc.locations]
    if args.format == "csv":
        header = ["perm", "pattern", "occ"] + (["locations"] if args.locations else [])
        args.out.write(_dump_csv(header, [row]))
    else:
        args.out.write(_dump_json(row, args))
    return EXIT_OK


def cmd_census(args) -> int:
    cen = census(args.n, args.v, classes=args.classes, threads=args.threads,
                            cap=args.cap)
    doc = cen.to_json()
    if args.format == "csv":
        rows = [{"kind": "by_count", "key": r, "count": c} for r, c in doc["by_count"].items()]
        for cl in doc.get("classes", []):
            rows.append({"kind": "class", "count": cl["count"],
                         "key": ";".join(",".join(map(str, B)) for B in cl["locations"])})
        args.out.write(_dump_csv(["kind", "key", "count"], rows))
    else:
        args.out.write(_dump_json(doc, args))
    return EXIT_OK


def _hosts(args) -> list[Perm]:
    if args.perm is not None:
        return [args.perm]
    if args.n is None:
        raise InvalidInputError("give --perm or --n")
    if args.exhaustive:
        return list(enumerate_sn(args.n, cap=args.cap))
    if args.samples:
        return sample_hosts(args.n, args.samples, args.seed)
    raise InvalidInputError("with --n, give --exhaustive or --samples K")


def _subset_measure(args, n: int) -> SubsetMeasure:
    if args.measure:
        with open(args.measure) as fh:
            mu = SubsetMeasure.from_json(json.load(fh))
        if mu.n != n:
            raise InvalidInputError(f"measure file is on P({mu.n}), expected P({n})")
        return mu
    if args.p is None:
        raise InvalidInputError("give --p or --measure")
    return SubsetMeasure.bernoulli(n, _coerce(args.p, args.mode))


def cmd_verify(args) -> int:
    kind = args.theorem
    mode = args.mode
    if kind == "t1a":
        hosts = _hosts(args)
        if args.ell is not None and args.d is not None:
            reps = (verify_t1a(p, args.ell, args.d[0], mode or EXACT) for p in hosts)
        else:
            reps = sweep_t1a(hosts, mode or EXACT)
        return _emit_reports(args, "verify t1a", reps)
    if kind == "t1b":
        hosts = _hosts(args)
        if args.pattern is not None:
            if args.ell is None:
                raise InvalidInputError("--pattern needs --ell")
            reps = (verify_t1b(p, args.pattern, args.ell, mode or EXACT, OccCache()) for p in hosts)
        else:
            reps = sweep_t1b(hosts, args.d or [4], mode or EXACT)
        return _emit_reports(args, "verify t1b", reps)
    if kind == "t2a":
        if args.n is None:
            raise InvalidInputError("t2a needs --n")
        mu = _subset_measure(args, args.n)
        if args.v is not None:
            patterns = [args.v]
        elif args.exhaustive and args.d:
            patterns = [v for d in args.d for v in enumerate_sn(d)]
        else:
            raise InvalidInputError("give --v, or --exhaustive with --d")
        reps = [verify_t2a(args.n, v, mu, mode, threads=args.threads) for v in patterns]
        return _emit_reports(args, "verify t2a", reps)
    if kind == "lemma3":
        hosts = _hosts(args)
        ds = args.d or [2]
        if args.measure:
            mu = _subset_measure(args, len(hosts[0]))
            reps = (verify_lemma3(p, d, mu, mode) for p in hosts for d in ds)
        else:
            if args.p is None:
                raise InvalidInputError("give --p or --measure")
            reps = sweep_lemma3(hosts, ds, _coerce(args.p, mode), mode)
        return _emit_reports(args, "verify lemma3", reps)
    if kind == "t2b":
        return _verify_t2b(args)
    raise InvalidInputError(f"unknown theorem {kind!r}")


def _verify_t2b(args) -> int:
    if args.v is None or args.n is None:
        raise InvalidInputError("t2b needs --v and --n")
    d = len(args.v)
    subsets = parse_chain(args.chain) if args.chain else [tuple(range(1, i + 1)) for i in range(1, d)]
    chain = induced_chain(args.v, subsets)
    mode = args.mode
    if args.samples:
        reps = t2b_trials(args.n, chain, args.samples, args.seed, mode)
        return _emit_reports(args, "verify t2b", reps)
    if args.uniform_weights:
        weights = ChainMeasure.uniform(d)
    elif args.weights:
        weights = ChainMeasure(tuple(_coerce(w, mode) for w in args.weights))
    else:
        raise InvalidInputError("give --uniform-weights, --weights or --samples")
    if not args.x:
        raise InvalidInputError("t2b needs --x")
    xs = [_coerce(x, mode) for x in args.x]
    x = xs[0] if len(xs) == 1 else xs
    return _emit_reports(args, "verify t2b", [verify_t2b(args.n, chain, weights, x, mode)])


def cmd_simulate(args) -> int:
    patterns = args.pattern or [Perm.parse(p) for p in FIG1_PATTERNS]
    rows = simulate_fig1(args.n, args.samples, patterns, args.ell, args.seed)
    header = ["pattern", "sample_index", "lhs", "rhs_log", "holds", "perm"]
    if args.format == "json":
        args.out.write(_dump_json({"command": "simulate", "rows": [
            dict(r, rhs_log=json_float(r["rhs_log"])) for r in rows]}, args))
    else:
        args.out.write(_dump_csv(header, rows))
    return EXIT_VIOLATED if any(r["holds"] == VIOLATED for r in rows) else EXIT_OK


def cmd_scan(args) -> int:
    mu = SubsetMeasure.bernoulli(args.n, _coerce(args.p, args.mode))
    rows = conjecture_scan(args.n, args.d, mu, args.mode, threads=args.threads)
    header = ["pattern", "inversions", "lhs_log", "rhs_log", "slack_log", "holds"]
    if args.format == "json":
        args.out.write(_dump_json({"command": "scan", "rows": [
            {k: json_float(v) if isinstance(v, float) else v for k, v in r.items()} for r in rows]}, args))
    else:
        args.out.write(_dump_csv(header, rows))
    return EXIT_VIOLATED if any(r["holds"] == VIOLATED for r in rows) else EXIT_OK


def _load_dist(args):
    if args.probs:
        return FiniteDistribution.from_probs([float(x) for x in args.probs])
    if args.dist:
        with open(args.dist) as fh:
            data = json.load(fh)
        if "entries" in data:
            return JointDistribution.from_json(data).to_finite()
        return FiniteDistribution.from_probs(data["probs"])
    raise InvalidInputError("give --probs or --dist")


def cmd_entropy(args) -> int:
    if args.check == "h":
        dist = _load_dist(args)
        rows = [{"check": "entropy", "lhs": entropy(dist), "rhs": None, "slack": None, "holds": None}]
    elif args.check == "bounded":
        rows = [boundedness_check(_load_dist(args)).to_json()]
    elif args.check == "shearer":
        if not args.joint:
            raise InvalidInputError("shearer needs --joint")
        with open(args.joint) as fh:
            joint = JointDistribution.from_json(json.load(fh))
        cover = parse_cover(args.cover) if args.cover else \
            [c for c in itertools.combinations(range(1, joint.arity + 1), max(joint.arity - 1, 1))]
        t = args.t if args.t is not None else max(joint.arity - 1, 1)
        rows = [shearer_check(joint, cover, t).to_json()]
    else:  # random
        rng = random.Random(args.seed)
        cover = parse_cover(args.cover) if args.cover else list(itertools.combinations(range(1, args.arity + 1), 2))
        t = args.t if args.t is not None else args.arity - 1
        rows = []
        for _ in range(args.samples):
            rows.append(boundedness_check(random_distribution(rng, rng.randint(1, 8))).to_json())
            rows.append(shearer_check(random_joint(rng, args.arity), cover, t).to_json())
    if args.format == "csv":
        args.out.write(_dump_csv(["check", "lhs", "rhs", "slack", "holds"], rows))
    else:
        args.out.write(_dump_json({"command": f"entropy {args.check}", "rows": rows}, args))
    return EXIT_OK if all(r["holds"] is not False for r in rows) else EXIT_VIOLATED


# parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default=None)
    common.add_argument("--mode", choices=[EXACT, FLOAT], default=None)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker processes (default ${THREADS_ENV} or 1)")
    common.add_argument("--timestamp", action="store_true", help="add generated_at to JSON output")
    common.add_argument("--output", "-o", default=None)

    ap = argparse.ArgumentParser(prog="permineq", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("occ", parents=[common], help="count occurrences of a pattern")
    p.add_argument("--perm", type=_perm, required=True)
    p.add_argument("--pattern", type=_perm, required=True)
    p.add_argument("--locations", action="store_true")
    p.set_defaults(func=cmd_occ)

    p = sub.add_parser("census", parents=[common], help="tally S_n by occurrences of v")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v", type=_perm, required=True)
    p.add_argument("--classes", action="store_true")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", parents=[common], help="check an inequality")
    p.add_argument("theorem", choices=["t1a", "t1b", "t2a", "t2b", "lemma3"])
    p.add_argument("--perm", type=_perm)
    p.add_argument("--pattern", type=_perm)
    p.add_argument("--v", type=_perm)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=_int_list, help="one or more lengths, e.g. '4,5'")
    p.add_argument("--ell", type=int)
    p.add_argument("--p", type=_number)
    p.add_argument("--measure", help="explicit measure JSON file")
    p.add_argument("--chain", help="intermediate chain subsets, e.g. '2;2,3;2,3,5'")
    p.add_argument("--uniform-weights", action="store_true")
    p.add_argument("--weights", type=_number_list)
    p.add_argument("--x", type=_number_list, help="x_2..x_d, or one value for all")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--cap", type=int, default=DEFAULT_SN_CAP)
    p.add_argument("--summary-only", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", parents=[common], help="random-host occurrence bound experiment")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--pattern", type=_perm, action="append")
    p.add_argument("--ell", type=int, default=3)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("scan", parents=[common], help="T2a slack against pattern disorder")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=_number, default=Fraction(1, 2))
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("entropy", parents=[common], help="entropy checks")
    p.add_argument("check", choices=["h", "bounded", "shearer", "random"])
    p.add_argument("--probs", type=_number_list)
    p.add_argument("--dist")
    p.add_argument("--joint")
    p.add_argument("--cover")
    p.add_argument("--t", type=int)
    p.add_argument("--arity", type=int, default=3)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_entropy)
    return ap


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command == "simulate" else "json"
    if args.threads is None:
        args.threads = int(os.environ.get(THREADS_ENV, "1"))
    try:
        if args.output:
            with open(args.output, "w", newline="") as fh:
                args.out = fh
                return args.func(args)
        args.out = out or sys.stdout
        return args.func(args)
    except CapacityError as e:
        print(f"capacity error: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InvalidInputError, PreconditionError, FileNotFoundError, KeyError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
