"""Oracle cross-checking and encoding benchmarks."""

from __future__ import annotations

import csv
import statistics
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, TextIO

from .encodings import EncodingKind
from .engine import ClauseSet, PairRecord, Session
from .oracle import PairVerdict, check_coherence, oracle_verdict
from .terms import Clause
from .tptp import parse_cnf

SR_KINDS = (EncodingKind.SR_DIRECT, EncodingKind.SR_INDIRECT)

CSV_HEADER = [
    "pair_id", "|L|", "|M|", "entries", "pruned", "verdict",
    "vars", "clauses", "amo_groups", "conflicts", "time_ns",
]


def engine_verdict(session: Session, L: Clause, M: Clause) -> PairVerdict:
    """Run both checks on one pair; SR is checked even when L subsumes M."""
    subsumed = session.check_subsumption(L, M)
    conclusion = session.check_subsumption_resolution(L, M)
    session.finish_pair()
    return PairVerdict(subsumed, frozenset([conclusion]) if conclusion is not None else frozenset())


@dataclass
class VerifyReport:
    pairs: int = 0
    mismatches: list[str] = field(default_factory=list)
    subsumed: int = 0
    resolved: int = 0

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_pairs(pairs: Iterable[tuple[Clause, Clause]], learning: bool = False,
                 commutative: bool = True, stop_after: Optional[int] = 20) -> VerifyReport:
    """Compare both SR encodings against the oracle on every pair."""
    sessions = {k: Session(k, commutative=commutative, learning=learning) for k in SR_KINDS}
    report = VerifyReport()
    for L, M in pairs:
        report.pairs += 1
        expected = oracle_verdict(L, M, commutative)
        report.subsumed += expected.subsumed
        report.resolved += bool(expected.conclusions)
        results = {}
        for kind, session in sessions.items():
            got = engine_verdict(session, L, M)
            results[kind] = got
            coherence = check_coherence(got, expected, L, M)
            if not coherence.ok:
                report.mismatches.append(f"[{kind.value}] {coherence.report}")
        direct, indirect = (bool(results[k].conclusions) for k in SR_KINDS)
        if direct != indirect:
            report.mismatches.append(
                f"encodings disagree on {L!r} / {M!r}: direct={direct} indirect={indirect}"
            )
        if stop_after is not None and len(report.mismatches) >= stop_after:
            break
    return report


@dataclass
class BenchRow:
    pair_id: int
    record: PairRecord

    def as_list(self) -> list:
        r = self.record
        return [
            self.pair_id, r.side_len, r.main_len, r.entries, str(r.pruned).lower(),
            r.verdict, r.vars, r.clauses, r.amo_groups, r.conflicts, r.time_ns,
        ]


class Bench:
    """Runs the same forward-simplification steps under several SR encodings.

    The path through each clause set (which clause gets removed or replaced)
    follows the reference encoding, so every encoding sees identical pairs.
    """

    def __init__(self, kinds: Iterable[EncodingKind] = SR_KINDS,
                 reference: EncodingKind = EncodingKind.SR_INDIRECT,
                 learning: bool = False) -> None:
        self.kinds = list(kinds)
        self.reference = reference
        self.rows: dict[EncodingKind, list[BenchRow]] = {k: [] for k in self.kinds}
        order = self.kinds + ([reference] if reference not in self.kinds else [])
        self.sessions = {k: Session(k, learning=learning) for k in order}
        self.next_id = 0

    def _pair(self, L: Clause, M: Clause, want_sr: bool) -> tuple[bool, Optional[Clause]]:
        pair_id = self.next_id
        self.next_id += 1
        result = None
        for kind, session in self.sessions.items():
            subsumed = session.check_subsumption(L, M)
            conclusion = None
            if not subsumed and want_sr:
                conclusion = session.check_subsumption_resolution(L, M)
            if kind in self.rows:
                self.rows[kind].append(BenchRow(pair_id, session.record))
            session.finish_pair()
            if kind is self.reference:
                result = (subsumed, conclusion)
        return result

    def forward(self, M: Clause, F: ClauseSet) -> Optional[Clause]:
        """One forward-simplification call; returns M's replacement, M, or None if removed."""
        found = None
        for _, L in F.candidates(M):
            if L is M:
                continue
            subsumed, conclusion = self._pair(L, M, found is None)
            if subsumed:
                return None
            if found is None and conclusion is not None:
                found = conclusion
        return found if found is not None else M

    def run_pairs(self, pairs: Iterable[tuple[Clause, Clause]]) -> None:
        for L, M in pairs:
            self.forward(M, ClauseSet([L]))

    def run_problem(self, clauses: Iterable[Clause]) -> None:
        F = ClauseSet()
        for M in clauses:
            kept = self.forward(M, F)
            if kept is not None:
                F.add(kept)

    def run_corpus(self, path: Path) -> None:
        files = sorted(path.rglob("*.p")) if path.is_dir() else [path]
        for file in files:
            problem = parse_cnf(file.read_bytes())
            self.run_problem(nc.clause for nc in problem.clauses)

    def verdicts_agree(self) -> bool:
        columns = [[row.record.verdict for row in rows] for rows in self.rows.values()]
        return all(col == columns[0] for col in columns)

    def write_csv(self, kind: EncodingKind, out: TextIO) -> None:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in self.rows[kind]:
            writer.writerow(row.as_list())

    def summary(self) -> list[dict]:
        """Mean and standard deviation of per-pair time for each encoding."""
        lines = []
        for kind, rows in self.rows.items():
            times = [row.record.time_ns for row in rows]
            counts = sum((row.record.counts for row in rows), start=Counter())
            lines.append({
                "encoding": kind.value,
                "pairs": len(rows),
                "mean_ns": statistics.fmean(times) if times else 0.0,
                "std_ns": statistics.pstdev(times) if len(times) > 1 else 0.0,
                "clauses": sum(row.record.clauses for row in rows),
                "uniqueness": counts["uniqueness"],
                "structurality": counts["structurality"],
            })
        return lines
