"""``majlat`` command-line interface.

Exit codes: 0 success, 1 verification found violations, 2 bad input.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path
from typing import Sequence

from . import econ
from .couplings import comonotone_coupling, independent_coupling, sorted_mass_vector
from .entropy import entropy, parse_alpha
from .exceptions import MajlatError, ParseError
from .inequalities import PREDICATES, SweepConfig, delta_supermod, search_counterexamples, sweep_verify
from .io import read_pmf, round_list, write_lorenz_csv
from .lattice import join, meet
from .pmf import prefix_sums

COMMANDS = ("entropy", "meet", "join", "coupling", "lorenz", "delta", "verify", "search", "metric", "theil")


def _alpha_list(text: str):
    tokens = [t for t in text.split(",") if t.strip()]
    if not tokens:
        raise ParseError("empty order list")
    return [parse_alpha(t) for t in tokens]


def _base(token: str):
    if token == "e":
        return None
    try:
        b = float(token)
    except ValueError:
        raise ParseError(f"invalid log base {token!r}") from None
    if b <= 0 or b == 1:
        raise ParseError(f"invalid log base {token!r}")
    return b


def _precision(text: str) -> int:
    p = int(text)
    if not 1 <= p <= 17:
        raise argparse.ArgumentTypeError("precision must lie in [1, 17]")
    return p


def _num(x: float, precision: int):
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return round(float(x), precision)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_precision, default=9, help="decimal digits in output (1-17)")
    common.add_argument("--strict", action="store_true", help="reject input PMFs that do not sum to 1")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")

    parser = argparse.ArgumentParser(prog="majlat", description="Majorization lattice toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", parents=[common], help="Rényi or Tsallis entropy of a PMF")
    p.add_argument("--pmf", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--family", choices=("renyi", "tsallis"), default="renyi")
    p.add_argument("--base", default="e")

    for name in ("meet", "join"):
        p = sub.add_parser(name, parents=[common], help=f"lattice {name} of two PMFs")
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)

    p = sub.add_parser("coupling", parents=[common], help="independent or comonotone coupling")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--kind", choices=("independent", "comonotone"), default="comonotone")
    p.add_argument("--sorted", action="store_true", help="emit the sorted mass vector as JSON")

    p = sub.add_parser("lorenz", parents=[common], help="Lorenz curve breakpoints as CSV")
    p.add_argument("--pmf", required=True)
    p.add_argument("--out", help="write CSV to this path instead of stdout")

    p = sub.add_parser("delta", parents=[common], help="supermodularity gap over a list of orders")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--family", choices=("renyi", "tsallis"), default="renyi")
    p.add_argument("--alphas", default="0,0.2,0.5,0.7,0.9,1,2,inf")
    p.add_argument("--base", default="e")

    p = sub.add_parser("verify", parents=[common], help="seeded property sweep")
    p.add_argument("--predicate", default="subadd", help=f"comma list of {','.join(PREDICATES)}")
    p.add_argument("--family", default="renyi", help="renyi, tsallis, or a comma list")
    p.add_argument("--alphas", default="0,0.5,1,2,inf")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--report", help="write the full JSON report here")

    p = sub.add_parser("search", parents=[common], help="witnesses of both supermodularity-gap signs")
    p.add_argument("--alpha", dest="alphas", default="0.5", help="one order or a comma list")
    p.add_argument("--family", choices=("renyi", "tsallis"), default="renyi")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("metric", parents=[common], help="entropy distance between two PMFs")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--alpha", default="1")
    p.add_argument("--base", default="e")

    p = sub.add_parser("theil", parents=[common], help="Theil index or its Rényi analogue")
    p.add_argument("--pmf", required=True)
    p.add_argument("--alpha", default="1")
    p.add_argument("--base", default="e")
    p.add_argument("--trim-zeros", action="store_true", help="use the support size instead of the vector length")
    return parser


def _emit_json(obj, out) -> None:
    out.write(json.dumps(obj) + "\n")


def _lattice_cmd(args, out) -> int:
    a, b = read_pmf(args.a, args.strict), read_pmf(args.b, args.strict)
    r = meet(a, b) if args.command == "meet" else join(a, b)
    masses = round_list(r.masses, args.precision)
    cums = round_list(prefix_sums(r).breakpoints, args.precision)
    if args.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["k", "mass", "prefix_sum"])
        for k, (m, c) in enumerate(zip(masses, cums), start=1):
            w.writerow([k, m, c])
    else:
        _emit_json({"pmf": masses, "prefix_sums": cums}, out)
    return 0


def _coupling_cmd(args, out) -> int:
    a, b = read_pmf(args.a, args.strict), read_pmf(args.b, args.strict)
    c = independent_coupling(a, b) if args.kind == "independent" else comonotone_coupling(a, b)
    if args.sorted:
        _emit_json({"kind": args.kind, "pmf": round_list(sorted_mass_vector(c).masses, args.precision)}, out)
    elif args.fmt == "json":
        cells = [{"i": i, "j": j, "mass": _num(m, args.precision)} for i, j, m in c.cells]
        _emit_json({"kind": args.kind, "cells": cells}, out)
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["i", "j", "mass"])
        for i, j, m in c.cells:
            w.writerow([i, j, _num(m, args.precision)])
    return 0


def _verify_cmd(args, out) -> int:
    cfg = SweepConfig(
        n=args.n,
        n_min=args.n_min,
        alpha_grid=_alpha_list(args.alphas),
        families=[f.strip() for f in args.family.split(",")],
        predicates=[s.strip() for s in args.predicate.split(",")],
        samples=args.samples,
        seed=args.seed,
        m=args.m,
        workers=args.workers,
    )
    report = sweep_verify(cfg)
    full = report.to_dict()
    if args.report:
        Path(args.report).write_text(json.dumps(full, indent=2))
    summary = {k: full[k] for k in ("config", "samples_run", "checks_run", "violation_count", "worst_gap")}
    summary["violations"] = full["violations"][:10]
    _emit_json(summary, out)
    return 0 if report.ok else 1


def _search_cmd(args, out) -> int:
    cfg = SweepConfig(
        n=args.n,
        alpha_grid=_alpha_list(args.alphas),
        families=[args.family],
        predicates=["supermod"],
        samples=args.samples,
        seed=args.seed,
        workers=args.workers,
    )
    report = search_counterexamples(cfg)
    result = []
    for a in cfg.alpha_grid:
        pos = report.witnesses_for(a, +1, args.family)
        neg = report.witnesses_for(a, -1, args.family)
        pick = lambda ws: None if not ws else max(ws, key=lambda w: abs(w.delta))  # noqa: E731
        entry = {"alpha": str(a), "counts": report.sign_counts.get(f"{args.family}:{a}", {})}
        for label, w in (("positive", pick(pos)), ("negative", pick(neg))):
            entry[label] = None if w is None else {
                "p": round_list(w.p, args.precision),
                "q": round_list(w.q, args.precision),
                "delta": _num(w.delta, args.precision),
                "sample": w.sample,
            }
        result.append(entry)
    _emit_json({"family": args.family, "samples_run": report.samples_run, "seed": args.seed, "witnesses": result}, out)
    return 0


def _theil_cmd(args, out) -> int:
    x = read_pmf(args.pmf, args.strict)
    if args.trim_zeros:
        x = x.trimmed()
    alpha = parse_alpha(args.alpha)
    base = _base(args.base)
    value = econ.theil(x, base) if alpha.near_one else econ.renyi_theil(x, alpha, base)
    _emit_json({"value": _num(value, args.precision), "alpha": str(alpha), "base": args.base}, out)
    return 0


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "entropy":
            x = read_pmf(args.pmf, args.strict)
            alpha = parse_alpha(args.alpha)
            value = entropy(x, alpha, args.family, _base(args.base))
            _emit_json({"alpha": str(alpha), "family": args.family, "value": _num(value, args.precision)}, out)
            return 0
        if args.command in ("meet", "join"):
            return _lattice_cmd(args, out)
        if args.command == "coupling":
            return _coupling_cmd(args, out)
        if args.command == "lorenz":
            x = read_pmf(args.pmf, args.strict)
            if args.out:
                with open(args.out, "w", newline="") as fh:
                    write_lorenz_csv(x, fh, args.precision)
            else:
                write_lorenz_csv(x, out, args.precision)
            return 0
        if args.command == "delta":
            a, b = read_pmf(args.a, args.strict), read_pmf(args.b, args.strict)
            base = _base(args.base)
            rows = [
                {"alpha": str(al), "delta": _num(delta_supermod(a, b, al, args.family, base), args.precision)}
                for al in _alpha_list(args.alphas)
            ]
            _emit_json({"family": args.family, "base": args.base, "deltas": rows}, out)
            return 0
        if args.command == "verify":
            return _verify_cmd(args, out)
        if args.command == "search":
            return _search_cmd(args, out)
        if args.command == "metric":
            a, b = read_pmf(args.a, args.strict), read_pmf(args.b, args.strict)
            alpha = parse_alpha(args.alpha)
            value = econ.entropy_distance(a, b, alpha, _base(args.base))
            _emit_json({"value": _num(value, args.precision), "alpha": str(alpha), "base": args.base}, out)
            return 0
        if args.command == "theil":
            return _theil_cmd(args, out)
    except (MajlatError, ValueError) as exc:
        print(f"majlat: error: {exc}", file=sys.stderr)
        return 2
    parser.error(f"unknown command {args.command}")
    return 2


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
