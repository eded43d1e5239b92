"""Forward simplification by subsumption and subsumption resolution.

A :class:`Session` owns one match set and one solver.  ``check_subsumption``
sets both up for a pair; ``check_subsumption_resolution`` on the same pair
reuses them.
"""

from __future__ import annotations

import enum
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .encodings import (
    ENCODERS,
    Encoding,
    EncodingKind,
    build_conclusion,
    encode_subsumption,
    load_match_variables,
)
from .matchset import DEFAULT_MAX_ENTRIES, MatchSet, prune
from .sat import Solver, Status
from .terms import Clause


@dataclass
class PairRecord:
    """Per-pair measurements, one row of the benchmark CSV."""

    side_len: int
    main_len: int
    entries: int = 0
    pruned: bool = False
    verdict: str = "none"
    vars: int = 0
    clauses: int = 0
    amo_groups: int = 0
    conflicts: int = 0
    time_ns: int = 0
    counts: Counter = field(default_factory=Counter)


class Session:
    def __init__(
        self,
        encoding: EncodingKind = EncodingKind.SR_INDIRECT,
        commutative: bool = True,
        max_entries: int = DEFAULT_MAX_ENTRIES,
        learning: bool = False,
        conflict_budget: Optional[int] = None,
        on_pair: Optional[Callable[[PairRecord], None]] = None,
    ) -> None:
        if encoding is EncodingKind.SUBSUMPTION:
            raise ValueError("session encoding must be an SR encoding")
        self.encoding = encoding
        self.commutative = commutative
        self.ms = MatchSet(max_entries)
        self.solver = Solver(learning=learning, conflict_budget=conflict_budget)
        self.stats: Counter = Counter()
        self.on_pair = on_pair
        self.record: Optional[PairRecord] = None
        self.last_encoding: Optional[Encoding] = None
        self._pair: Optional[tuple[Clause, Clause]] = None

    def snapshot(self) -> dict[str, int]:
        return dict(sorted(self.stats.items()))

    def _solve(self, enc: Encoding) -> Status:
        self.last_encoding = enc
        self.stats["sat_calls"] += 1
        status = self.solver.solve()
        rec = self.record
        if rec is not None:
            rec.vars = max(rec.vars, self.solver.num_vars)
            rec.clauses += enc.num_clauses
            rec.amo_groups += len(enc.at_most_one)
            rec.conflicts += self.solver.last_conflicts
            rec.counts.update(enc.counts())
        if status is Status.UNKNOWN:
            self.stats["aborted"] += 1
        return status

    def _setup(self, L: Clause, M: Clause) -> None:
        self._pair = (L, M)
        self.record = PairRecord(len(L), len(M))
        self.stats["pairs"] += 1
        f_s, f_sr = prune(L, M)
        if f_s and f_sr:
            self.ms.clear()
            self.ms.f_s = self.ms.f_sr = True
            self.stats["pruned"] += 1
            self.record.pruned = True
            return
        self.stats["fill_match_set"] += 1
        self.ms.fill(L, M, self.commutative, (f_s, f_sr))
        if self.ms.overflow:
            self.stats["overflow"] += 1
        load_match_variables(self.ms, self.solver)
        self.record.entries = len(self.ms.entries)

    def check_subsumption(self, L: Clause, M: Clause) -> bool:
        """True iff L subsumes M (multiset semantics)."""
        start = time.perf_counter_ns()
        try:
            self._setup(L, M)
            if self.ms.f_s:
                self.stats["s_pruned"] += 1
                return False
            status = self._solve(encode_subsumption(self.ms, self.solver))
            subsumed = status is Status.SAT
            if subsumed:
                self.stats["subsumed"] += 1
                self.record.verdict = "subsumed"
            return subsumed
        finally:
            self.record.time_ns += time.perf_counter_ns() - start

    def check_subsumption_resolution(
        self, L: Clause, M: Clause, kind: Optional[EncodingKind] = None
    ) -> Optional[Clause]:
        """Conclusion of subsumption resolution of M by L, or None."""
        kind = kind or self.encoding
        start = time.perf_counter_ns()
        if self._pair is None or self._pair[0] is not L or self._pair[1] is not M:
            self._setup(L, M)
        try:
            ms = self.ms
            if ms.f_sr:
                self.stats["sr_pruned"] += 1
                return None
            if not any(not e.positive for e in ms.entries):
                self.stats["sr_no_negative"] += 1
                return None
            status = self._solve(ENCODERS[kind](ms, self.solver))
            if status is not Status.SAT:
                return None
            conclusion = build_conclusion(self.solver.model, ms, M, kind)
            self.stats["sr_applied"] += 1
            if self.record.verdict == "none":
                self.record.verdict = "sr"
            return conclusion
        finally:
            self.record.time_ns += time.perf_counter_ns() - start

    def finish_pair(self) -> None:
        if self.record is not None and self.on_pair is not None:
            self.on_pair(self.record)
        self.record = None
        self._pair = None


class OutcomeKind(enum.Enum):
    SUBSUMED = "subsumed"
    SIMPLIFIED = "simplified"
    UNCHANGED = "unchanged"


@dataclass
class SimplifyOutcome:
    kind: OutcomeKind
    conclusion: Optional[Clause] = None
    by: Optional[int] = None


class ClauseSet:
    """Active clauses keyed by integer handle, in insertion order.

    A per-predicate index lists the handles of clauses containing each
    predicate; it narrows candidate side premises for a main premise.
    """

    def __init__(self, clauses=()) -> None:
        self._clauses: dict[int, Clause] = {}
        self._by_object: dict[int, int] = {}
        self._index: dict[int, dict[int, None]] = {}
        self._next = 0
        for c in clauses:
            self.add(c)

    def __len__(self) -> int:
        return len(self._clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(list(self._clauses.values()))

    def __contains__(self, key: int) -> bool:
        return key in self._clauses

    def __getitem__(self, key: int) -> Clause:
        return self._clauses[key]

    def keys(self) -> list[int]:
        return list(self._clauses)

    def items(self) -> list[tuple[int, Clause]]:
        return list(self._clauses.items())

    def clauses(self) -> list[Clause]:
        return list(self._clauses.values())

    def key_of(self, clause: Clause) -> Optional[int]:
        key = self._by_object.get(id(clause))
        if key is not None and self._clauses[key] is clause:
            return key
        return None

    def add(self, clause: Clause) -> int:
        key = self._next
        self._next += 1
        self._clauses[key] = clause
        self._attach(key, clause)
        return key

    def remove(self, key: int) -> Clause:
        clause = self._clauses.pop(key)
        self._detach(key, clause)
        return clause

    def replace(self, key: int, clause: Clause) -> None:
        """Swap the clause under ``key`` keeping its position."""
        self._detach(key, self._clauses[key])
        self._clauses[key] = clause
        self._attach(key, clause)

    def _attach(self, key: int, clause: Clause) -> None:
        self._by_object[id(clause)] = key
        for p in clause.predicate_counts:
            self._index.setdefault(p, {})[key] = None

    def _detach(self, key: int, clause: Clause) -> None:
        self._by_object.pop(id(clause), None)
        for p in clause.predicate_counts:
            bucket = self._index.get(p)
            if bucket is not None:
                bucket.pop(key, None)
                if not bucket:
                    del self._index[p]

    def candidates(self, M: Clause, use_index: bool = True) -> list[tuple[int, Clause]]:
        """Non-empty clauses whose predicates all occur in M, in insertion order."""
        if not use_index:
            return [(k, c) for k, c in self._clauses.items() if c.literals]
        keys: set[int] = set()
        for p in M.predicate_counts:
            keys.update(self._index.get(p, ()))
        mp = M.predicate_counts
        found = []
        for k in sorted(keys):
            c = self._clauses[k]
            if all(p in mp for p in c.predicate_counts):
                found.append((k, c))
        return found

    def index_consistent(self) -> bool:
        expected: dict[int, set[int]] = {}
        for k, c in self._clauses.items():
            for p in c.predicate_counts:
                expected.setdefault(p, set()).add(k)
        return expected == {p: set(ks) for p, ks in self._index.items()}


def forward_outcome(
    session: Session, M: Clause, F: ClauseSet, use_index: bool = True
) -> SimplifyOutcome:
    """Scan F for a side premise that subsumes or shortens M; F is not modified."""
    found: Optional[SimplifyOutcome] = None
    for key, L in F.candidates(M, use_index):
        if L is M:
            continue
        try:
            if session.check_subsumption(L, M):
                return SimplifyOutcome(OutcomeKind.SUBSUMED, by=key)
            if found is None:
                conclusion = session.check_subsumption_resolution(L, M)
                if conclusion is not None:
                    found = SimplifyOutcome(OutcomeKind.SIMPLIFIED, conclusion, key)
        finally:
            session.finish_pair()
    return found or SimplifyOutcome(OutcomeKind.UNCHANGED)


def forward_simplify(
    session: Session, M: Clause, F: ClauseSet, use_index: bool = True
) -> bool:
    """Simplify M against F; update F in place and report whether M changed.

    A subsumed M is removed.  Otherwise the first subsumption-resolution
    conclusion found replaces M (or is added, if M was not in F).
    """
    outcome = forward_outcome(session, M, F, use_index)
    return apply_outcome(M, F, outcome)


def apply_outcome(M: Clause, F: ClauseSet, outcome: SimplifyOutcome) -> bool:
    key = F.key_of(M)
    if outcome.kind is OutcomeKind.SUBSUMED:
        if key is not None:
            F.remove(key)
        return True
    if outcome.kind is OutcomeKind.SIMPLIFIED:
        if key is not None:
            F.replace(key, outcome.conclusion)
        else:
            F.add(outcome.conclusion)
        return True
    return False


@dataclass
class TraceEvent:
    key: int
    before: Clause
    outcome: SimplifyOutcome


def simplify_to_fixpoint(
    F: ClauseSet,
    session: Optional[Session] = None,
    use_index: bool = True,
    trace: Optional[list[TraceEvent]] = None,
) -> ClauseSet:
    """Forward-simplify every clause until a full pass changes nothing.

    Every change removes a clause or a literal, so this terminates.
    """
    session = session or Session()
    changed = True
    while changed:
        changed = False
        for key in F.keys():
            if key not in F:
                continue
            M = F[key]
            while True:
                outcome = forward_outcome(session, M, F, use_index)
                if not apply_outcome(M, F, outcome):
                    break
                changed = True
                if trace is not None:
                    trace.append(TraceEvent(key, M, outcome))
                if outcome.kind is OutcomeKind.SUBSUMED:
                    break
                M = F[key]
    return F
