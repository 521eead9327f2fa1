"""Command-line front end.

Exit status convention: 0 = affirmative / valid, 1 = negative decision or
violations found, 2 = usage or input error.

The CCOV_THREADS environment variable caps internal parallelism (0 = auto).
All solvers currently run single-threaded and deterministically, so the
setting only bounds what future parallel sections may use; output is
byte-identical for any value.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path as FsPath

from . import formats
from .exact import PathBudget, solve_exact
from .graph import CcfgValidationError, CcovError, ConstraintType, has_cycle
from .negative import has_ec_with_negative
from .positive import InfeasibleConstraintError, solve_positive
from .randgen import random_acyclic_ccfg
from .reductions import OracleMode, reduce_formula, sat_oracle
from .semantics import check

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def _threads() -> int:
    raw = os.environ.get("CCOV_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise CcovError(f"CCOV_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise CcovError("CCOV_THREADS must be >= 0")
    return n


def _read(path: str) -> str:
    return FsPath(path).read_text()


def cmd_validate(args) -> int:
    try:
        formats.parse_ccfg(_read(args.graph))
    except CcfgValidationError as exc:
        for v in exc.violations:
            print(v)
        return EXIT_NEGATIVE
    print("valid")
    return EXIT_OK


def cmd_check(args) -> int:
    g = formats.parse_ccfg(_read(args.graph))
    ts = formats.parse_testset(_read(args.testset), g)
    report = check(ts, g)
    if args.json:
        print(json.dumps({
            "admissible": report.admissible,
            "achieves_ec": report.achieves_ec,
            "uncovered_edges": [list(e) for e in report.uncovered_edges],
            "violations": [
                {"constraint": list(v.constraint), "kind": v.kind,
                 "path": list(v.path) if v.path else None}
                for v in report.violations
            ],
        }, indent=2))
    else:
        print(f"admissible: {report.admissible}")
        print(f"achieves_ec: {report.achieves_ec}")
        for e in report.uncovered_edges:
            print(f"uncovered: {e[0]} -> {e[1]}")
        for v in report.violations:
            where = f" path {'.'.join(v.path)}" if v.path else ""
            print(f"violation: {v.constraint} {v.kind}{where}")
    return EXIT_OK if report.admissible and report.achieves_ec else EXIT_NEGATIVE


def cmd_solve(args) -> int:
    _threads()
    g = formats.parse_ccfg(_read(args.graph))
    budget = PathBudget(max_edge_repetition=args.max_edge_rep,
                        max_paths_considered=args.max_paths)
    method = args.method
    if method == "auto":
        method = {ConstraintType.POSITIVE: "positive",
                  ConstraintType.NEGATIVE: "fpt"}.get(g.ctype, "exact")
    witness = None
    bounded = False
    if method == "positive":
        try:
            witness = solve_positive(g)
            decision = True
        except InfeasibleConstraintError as exc:
            decision = False
            print(f"infeasible constraint: {exc.constraint}")
    elif method == "fpt":
        decision, witness = has_ec_with_negative(g)
    else:
        result = solve_exact(g, budget)
        decision, witness, bounded = result.decision, result.witness, result.budget_bounded
    if not decision:
        print("no admissible edge-covering test set"
              + (" (budget-bounded)" if bounded else ""))
        return EXIT_NEGATIVE
    text = formats.write_testset(witness)
    if args.out:
        FsPath(args.out).write_text(text)
        print(f"test set with {len(witness)} paths written to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_reduce(args) -> int:
    f = formats.parse_dimacs(_read(args.cnf))
    kind = {"negative": ConstraintType.NEGATIVE,
            "max-once": ConstraintType.MAX_ONCE,
            "once": ConstraintType.ONCE,
            "always": ConstraintType.ALWAYS}[args.theorem]
    g = reduce_formula(f, kind)
    text = formats.write_ccfg(g)
    if args.out:
        FsPath(args.out).write_text(text)
        print(f"graph with {len(g.graph.vertices)} vertices written to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    f = formats.parse_dimacs(_read(args.cnf))
    mode = OracleMode.THREE_SAT if args.mode == "3sat" else OracleMode.ONE_IN_THREE_POSITIVE
    sat, assignment = sat_oracle(f, mode)
    if sat:
        pretty = " ".join(f"x{v}={int(val)}" for v, val in sorted(assignment.items()))
        print(f"satisfiable: {pretty}")
        return EXIT_OK
    print("unsatisfiable")
    return EXIT_NEGATIVE


def cmd_fuzz(args) -> int:
    _threads()
    rng = random.Random(args.seed)
    disagreements = 0
    for i in range(args.count):
        g = random_acyclic_ccfg(rng, max_vertices=args.max_vertices,
                                max_constraints=args.max_constraints)
        fpt_decision, fpt_witness = has_ec_with_negative(g)
        exact_decision = solve_exact(g, PathBudget(max_edge_repetition=1)).decision
        ok = fpt_decision == exact_decision
        if ok and fpt_decision:
            report = check(fpt_witness, g)
            ok = report.admissible and report.achieves_ec
        if not ok:
            disagreements += 1
            repro = FsPath(args.out_dir) / f"fuzz-disagreement-{i:04d}.ccfg.json"
            repro.parent.mkdir(parents=True, exist_ok=True)
            repro.write_text(formats.write_ccfg(g))
            print(f"disagreement on instance {i}: fpt={fpt_decision} "
                  f"exact={exact_decision} repro={repro}")
    print(f"{args.count} instances, {disagreements} disagreements")
    return EXIT_OK if disagreements == 0 else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccov",
        description="Edge-coverage test sets for constraint-extended control-flow graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a cCFG document")
    p.add_argument("graph")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="check a test set for admissibility and coverage")
    p.add_argument("graph")
    p.add_argument("testset")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="construct an admissible edge-covering test set")
    p.add_argument("graph")
    p.add_argument("--method", choices=["auto", "positive", "fpt", "exact"],
                   default="auto",
                   help="auto picks: positive type -> polynomial construction, "
                        "negative -> FPT, otherwise exhaustive")
    p.add_argument("--max-edge-rep", type=int, default=2)
    p.add_argument("--max-paths", type=int, default=100_000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", help="build a cCFG from a 3-CNF formula")
    p.add_argument("cnf")
    p.add_argument("--theorem", choices=["negative", "max-once", "once", "always"],
                   required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("oracle", help="brute-force SAT decision")
    p.add_argument("cnf")
    p.add_argument("--mode", choices=["3sat", "1in3"], default="3sat")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fuzz", help="differential test: FPT vs exhaustive on random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-vertices", type=int, default=8)
    p.add_argument("--max-constraints", type=int, default=3)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_fuzz)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CcfgValidationError as exc:
        # malformed instances reaching a non-validate command are input errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE if args.command != "validate" else EXIT_NEGATIVE
    except CcovError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
