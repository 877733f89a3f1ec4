"""Command-line front end.

Two subcommands: `rw measure` evaluates one quantifier on one state spec, and
`rw experiment` runs a named experiment and reports its pass/fail table.
Exit status: 0 when everything passed, 1 when a computation or assertion
failed, 2 for usage and configuration errors.  Set RW_LOG=info (or debug)
for progress output on long runs.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

from .harness import EXPERIMENT_NAMES, ExperimentConfig, run_experiment
from .measures import (asymmetry_weight, coherence_weight, hs_lower_bound,
                       l1_coherence, rel_entropy_asymmetry,
                       rel_entropy_coherence, robustness_asymmetry,
                       robustness_coherence)
from .sdp import SolverError
from .states import UnitaryRep, parse_state_spec, rep_cyclic, rep_swap

log = logging.getLogger("resweight")

MEASURE_KEYS = ("cw", "aw", "cr", "cl1", "crel", "ar", "arel", "hsbound")
_NEEDS_REP = ("aw", "ar", "arel")
_ENTROPY_KEYS = ("crel", "arel")


def parse_rep_spec(text: str) -> UnitaryRep:
    """Parse 'swap:d' (two copies of a d-level system) or 'cyclic:d,n'."""
    kind, _, rest = text.partition(":")
    try:
        if kind == "swap":
            return rep_swap(int(rest))
        if kind == "cyclic":
            d, n = (int(v) for v in rest.split(","))
            return rep_cyclic(d, n)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad representation spec {text!r}") from exc
    raise ValueError(f"unknown representation kind {kind!r}; "
                     "use swap:d or cyclic:d,n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rw",
        description="Weight-based quantifiers of coherence and asymmetry: "
                    "single-state measurements and batch experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", help="evaluate one measure on one state")
    m.add_argument("--state", required=True, metavar="SPEC",
                   help="state spec: werner:d=3,alpha=0.5 | "
                        "gisin:lambda=0.8,theta=0.7854 | "
                        "haar-mixed:d=4,denv=4,seed=42 | haar-pure:d=3,seed=7 "
                        "| max-coherent:d=4 | file:<path.json>")
    m.add_argument("--measure", required=True, choices=MEASURE_KEYS,
                   help="cw/aw weight, cr/ar robustness, cl1 l1-norm, "
                        "crel/arel relative entropy, hsbound Hilbert-Schmidt "
                        "lower bound")
    m.add_argument("--rep", metavar="REP",
                   help="representation swap:d or cyclic:d,n; required for "
                        "aw/ar/arel, optional for hsbound, rejected otherwise")
    m.add_argument("--json", action="store_true",
                   help="emit a JSON report instead of a bare number")
    m.add_argument("--certificates", action="store_true",
                   help="include witness/free-state matrices in the JSON "
                        "report")
    m.add_argument("--bits", action="store_true",
                   help="report crel/arel in bits instead of nats "
                        "(rescales output only)")
    m.add_argument("--trace", metavar="PATH",
                   help="dump solver iterates (iteration, gap, residuals) as "
                        "JSON lines to PATH")

    e = sub.add_parser("experiment", help="run a named experiment")
    e.add_argument("--name", required=True, choices=EXPERIMENT_NAMES)
    e.add_argument("--dim", type=int, default=None, metavar="D",
                   help="state dimension for scatter (default 3); environment "
                        "dimension for violation (default 4, 1 = pure inputs)")
    e.add_argument("--samples", type=int, default=1000, metavar="N",
                   help="sample count (default 1000)")
    e.add_argument("--seed", type=int, default=0, metavar="S",
                   help="base RNG seed (default 0)")
    e.add_argument("--out", metavar="PATH", help="CSV output path")
    e.add_argument("--tol", type=float, default=1e-6, metavar="T",
                   help="inequality tolerance (default 1e-6)")
    return parser


def cmd_measure(args) -> int:
    rho = parse_state_spec(args.state)
    rep = parse_rep_spec(args.rep) if args.rep else None
    key = args.measure
    if key in _NEEDS_REP and rep is None:
        raise ValueError(f"measure {key!r} needs --rep")
    if rep is not None and key not in _NEEDS_REP and key != "hsbound":
        raise ValueError(f"measure {key!r} does not take --rep")
    if rep is not None and rep.dim != rho.shape[0]:
        raise ValueError(f"state dimension {rho.shape[0]} does not match "
                         f"representation dimension {rep.dim}")

    trace: list | None = [] if args.trace else None
    payload: dict
    if key == "hsbound":
        sharp, loose = hs_lower_bound(rho, free=rep)
        payload = {"measure": "hs-lower-bound", "sharp": float(sharp),
                   "loose": float(loose)}
        plain = f"{sharp:.12g} {loose:.12g}"
    elif key in ("cw", "aw", "cr", "ar"):
        if key == "cw":
            report = coherence_weight(rho, trace=trace)
        elif key == "aw":
            report = asymmetry_weight(rho, rep, trace=trace)
        elif key == "cr":
            report = robustness_coherence(rho, trace=trace)
        else:
            report = robustness_asymmetry(rho, rep, trace=trace)
        payload = report.to_json(include_matrices=args.certificates)
        plain = f"{report.value:.12g}"
    else:
        if key == "cl1":
            name, value = "l1-coherence", l1_coherence(rho)
        elif key == "crel":
            name, value = "rel-entropy-coherence", rel_entropy_coherence(rho)
        else:
            name, value = "rel-entropy-asymmetry", rel_entropy_asymmetry(rho, rep)
        unit = None
        if key in _ENTROPY_KEYS:
            unit = "bits" if args.bits else "nats"
            if args.bits:
                value /= math.log(2.0)
        payload = {"measure": name, "value": float(value)}
        if unit:
            payload["unit"] = unit
        plain = f"{value:.12g}"

    print(json.dumps(payload) if args.json else plain)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            for entry in trace:
                fh.write(json.dumps(entry, default=float) + "\n")
        log.info("wrote %d solver iterates to %s", len(trace), args.trace)
    return 0


def cmd_experiment(args) -> int:
    config = ExperimentConfig(name=args.name, dim=args.dim,
                              samples=args.samples, seed=args.seed,
                              out=args.out, tol=args.tol)
    result = run_experiment(config)
    print(result.table())
    if result.csv_path:
        print(f"wrote {result.csv_path}")
    if not result.passed:
        for fail in result.failures:
            print(json.dumps(fail, default=float), file=sys.stderr)
        return 1
    return 0


def main(argv: list | None = None) -> int:
    level = os.environ.get("RW_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "measure":
            return cmd_measure(args)
        return cmd_experiment(args)
    except SolverError as exc:
        print(f"rw: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"rw: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
