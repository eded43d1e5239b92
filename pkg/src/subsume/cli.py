"""Command-line interface: ``subsume check|simplify|verify|bench``.

Exit codes: 0 success, 1 mismatch found, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .encodings import EncodingKind
from .engine import ClauseSet, OutcomeKind, Session, TraceEvent, simplify_to_fixpoint
from .generate import dense_negative_pair, random_pairs
from .harness import SR_KINDS, Bench, verify_pairs
from .terms import ArityError
from .tptp import ParseError, parse_cnf, print_clause

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2

ENCODING_NAMES = {"direct": EncodingKind.SR_DIRECT, "indirect": EncodingKind.SR_INDIRECT}


def _color_enabled(stream) -> bool:
    setting = os.environ.get("SUBSUME_COLOR")
    if setting in ("0", "1"):
        return setting == "1"
    return hasattr(stream, "isatty") and stream.isatty()


def _paint(text: str, code: str, stream) -> str:
    return f"\033[{code}m{text}\033[0m" if _color_enabled(stream) else text


def _read_problem(path: str):
    try:
        data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
        return parse_cnf(data)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except (ParseError, ArityError) as exc:
        raise InputError(f"{path}: {exc}") from None


class InputError(Exception):
    pass


def _session(args) -> Session:
    return Session(
        ENCODING_NAMES[args.encoding],
        commutative=not args.no_commutative,
        learning=args.learning,
    )


def cmd_check(args) -> int:
    problem = _read_problem(args.file)
    for name in problem.dropped:
        print(f"warning: dropped tautology {name}", file=sys.stderr)
    if len(problem.clauses) != 2:
        raise InputError(f"expected exactly two clauses, found {len(problem.clauses)}")
    L, M = problem.clauses[0].clause, problem.clauses[1].clause
    session = _session(args)
    out = sys.stdout
    if session.check_subsumption(L, M):
        print(_paint("subsumed", "32", out))
    else:
        conclusion = session.check_subsumption_resolution(L, M)
        if conclusion is None:
            print(_paint("none", "33", out))
        else:
            print(_paint("sr", "36", out), print_clause(conclusion))
    record = session.record
    session.finish_pair()
    stats = session.snapshot()
    print(
        f"pruned={str(record.pruned).lower()} sat_calls={stats.get('sat_calls', 0)} "
        f"entries={record.entries}"
    )
    return EXIT_OK


def _describe(event: TraceEvent, names: dict[int, str]) -> str:
    name = names.get(event.key, str(event.key))
    by = names.get(event.outcome.by, str(event.outcome.by))
    if event.outcome.kind is OutcomeKind.SUBSUMED:
        return f"% {name} subsumed by {by}: {print_clause(event.before)}"
    return (
        f"% {name} simplified by {by}: {print_clause(event.before)} "
        f"--> {print_clause(event.outcome.conclusion)}"
    )


def cmd_simplify(args) -> int:
    problem = _read_problem(args.file)
    for name in problem.dropped:
        print(f"% warning: dropped tautology {name}", file=sys.stderr)
    F = ClauseSet()
    names, roles = {}, {}
    for nc in problem.clauses:
        key = F.add(nc.clause)
        names[key], roles[key] = nc.name, nc.role
    trace: list[TraceEvent] = []
    simplify_to_fixpoint(F, _session(args), trace=trace)
    if args.trace:
        for event in trace:
            print(_describe(event, names))
    for key, clause in F.items():
        print(f"cnf({names[key]}, {roles[key]}, {print_clause(clause)}).")
    return EXIT_OK


def cmd_verify(args) -> int:
    pairs = random_pairs(args.seed, args.count, args.max_lits)
    report = verify_pairs(pairs, learning=args.learning, stop_after=args.max_reports)
    for dump in report.mismatches:
        print(dump)
    status = "ok" if report.ok else _paint("MISMATCH", "31", sys.stdout)
    print(
        f"verified {report.pairs} pairs (seed={args.seed}, max_lits={args.max_lits}): "
        f"{len(report.mismatches)} mismatches, {report.subsumed} subsumed, "
        f"{report.resolved} with subsumption resolution [{status}]"
    )
    return EXIT_OK if report.ok else EXIT_MISMATCH


def _csv_path(base: str, kind: EncodingKind, several: bool) -> Path:
    path = Path(base)
    if not several:
        return path
    return path.with_name(f"{path.stem}-{kind.value}{path.suffix or '.csv'}")


def cmd_bench(args) -> int:
    kinds = list(SR_KINDS) if args.encoding == "both" else [ENCODING_NAMES[args.encoding]]
    bench = Bench(kinds, learning=args.learning)
    if args.corpus == "synthetic":
        if args.dense:
            bench.run_pairs(dense_negative_pair(args.dense) for _ in range(args.count))
        else:
            bench.run_pairs(random_pairs(args.seed, args.count, args.max_lits))
    else:
        path = Path(args.corpus)
        if not path.exists():
            raise InputError(f"corpus {path} does not exist")
        try:
            bench.run_corpus(path)
        except (ParseError, ArityError) as exc:
            raise InputError(str(exc)) from None
    if args.csv:
        for kind in kinds:
            target = _csv_path(args.csv, kind, len(kinds) > 1)
            with open(target, "w", newline="") as out:
                bench.write_csv(kind, out)
    print(f"{'encoding':<10} {'pairs':>7} {'mean_ns':>12} {'std_ns':>12} "
          f"{'clauses':>9} {'uniqueness':>11} {'structurality':>14}")
    for row in bench.summary():
        print(
            f"{row['encoding']:<10} {row['pairs']:>7} {row['mean_ns']:>12.0f} "
            f"{row['std_ns']:>12.0f} {row['clauses']:>9} {row['uniqueness']:>11} "
            f"{row['structurality']:>14}"
        )
    if not bench.verdicts_agree():
        print("verdicts differ between encodings", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subsume", description="SAT-based subsumption and subsumption resolution"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def engine_flags(p, both=False):
        choices = ["direct", "indirect"] + (["both"] if both else [])
        p.add_argument("--encoding", choices=choices, default="both" if both else "indirect")
        p.add_argument("--learning", action="store_true", help="use 1UIP clause learning")
        if not both:
            p.add_argument("--no-commutative", action="store_true",
                           help="match commutative predicates in one orientation only")

    p = sub.add_parser("check", help="check one pair: first clause L, second clause M")
    p.add_argument("file")
    engine_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("simplify", help="forward-simplify a problem to a fixpoint")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="annotate removed/replaced clauses")
    engine_flags(p)
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("verify", help="cross-check random pairs against the brute-force oracle")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=10000)
    p.add_argument("--max-lits", type=int, default=4)
    p.add_argument("--learning", action="store_true")
    p.add_argument("--max-reports", type=int, default=20)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="compare SR encodings")
    engine_flags(p, both=True)
    p.add_argument("--corpus", default="synthetic", help="'synthetic', a .p file or a directory")
    p.add_argument("--csv", help="output CSV (suffixed per encoding when both run)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--max-lits", type=int, default=4)
    p.add_argument("--dense", type=int, default=0, metavar="N",
                   help="synthetic pairs with N x N negative matches")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "count", 0) < 0 or getattr(args, "max_lits", 1) < 1:
        print("subsume: --count must be >= 0 and --max-lits >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"subsume: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
