"""Sparse match matrix between a side premise L and a main premise M."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .matching import Substitution, match_literal
from .terms import Clause

DEFAULT_MAX_ENTRIES = 4096


@dataclass
class MatchEntry:
    row: int
    col: int
    positive: bool
    subst: Substitution
    var: int = 0  # SAT variable, assigned when loaded into a solver

    def __repr__(self) -> str:
        sign = "+" if self.positive else "-"
        return f"b{sign}({self.row},{self.col})#{self.var}"


def prune(L: Clause, M: Clause) -> tuple[bool, bool]:
    """Cheap header checks: ``(F_S, F_SR)``; True means "cannot succeed".

    F_SR fires when some predicate of L does not occur in M.  F_S fires when
    the (predicate, polarity) multiset of L is not included in that of M.
    """
    if L.mask & ~M.mask:
        f_sr = True
    else:
        mp = M.predicate_counts
        f_sr = any(p not in mp for p in L.predicate_counts)
    if f_sr or len(L) > len(M):
        f_s = True
    else:
        mh = M.header
        f_s = any(n > mh.get(key, 0) for key, n in L.header.items())
    return f_s, f_sr


class MatchSet:
    """Match entries grouped by row (literal of L) and column (literal of M).

    Entries are created row-major; ``entries[k]`` is the k-th entry and its
    SAT variable is assigned in that order.  ``f_s``/``f_sr`` are True when
    subsumption / subsumption resolution is known to be impossible.
    """

    def __init__(self, max_entries: int = DEFAULT_MAX_ENTRIES) -> None:
        self.max_entries = max_entries
        self.clear()

    def clear(self) -> None:
        self.entries: list[MatchEntry] = []
        self.rows: list[list[MatchEntry]] = []
        self.cols: list[list[MatchEntry]] = []
        self.n_rows = 0
        self.n_cols = 0
        self.f_s = False
        self.f_sr = False
        self.overflow = False
        self.column_vars: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def row_has_positive(self, i: int) -> bool:
        return any(e.positive for e in self.rows[i])

    def col_has_positive(self, j: int) -> bool:
        return any(e.positive for e in self.cols[j])

    def col_has_negative(self, j: int) -> bool:
        return any(not e.positive for e in self.cols[j])

    def negatives(self) -> list[MatchEntry]:
        return [e for e in self.entries if not e.positive]

    def positives(self) -> list[MatchEntry]:
        return [e for e in self.entries if e.positive]

    def fill(self, L: Clause, M: Clause, commutative: bool = True,
             flags: Optional[tuple[bool, bool]] = None) -> None:
        """Compute every match of every (l_i, m_j) in both polarities.

        ``flags`` are the prune results; they are kept and tightened by empty
        rows (F_SR, F_S) and rows without a positive match (F_S).  Exceeding
        ``max_entries`` sets ``overflow`` and both flags.
        """
        self.clear()
        f_s, f_sr = flags if flags is not None else (False, False)
        self.n_rows, self.n_cols = len(L), len(M)
        self.rows = [[] for _ in range(self.n_rows)]
        self.cols = [[] for _ in range(self.n_cols)]
        for i, l in enumerate(L.literals):
            row = self.rows[i]
            for j, m in enumerate(M.literals):
                if l.predicate is not m.predicate:
                    continue
                for want_negative in (False, True):
                    for subst in match_literal(l, m, want_negative, commutative):
                        entry = MatchEntry(i, j, not want_negative, subst, len(self.entries))
                        self.entries.append(entry)
                        row.append(entry)
                        self.cols[j].append(entry)
            if len(self.entries) > self.max_entries:
                self.overflow = True
                self.f_s = self.f_sr = True
                return
            if not row:
                f_sr = f_s = True
            elif not any(e.positive for e in row):
                f_s = True
        self.f_s, self.f_sr = f_s, f_sr


def fill_match_set(L: Clause, M: Clause, commutative: bool = True,
                   max_entries: int = DEFAULT_MAX_ENTRIES) -> MatchSet:
    ms = MatchSet(max_entries)
    ms.fill(L, M, commutative, prune(L, M))
    return ms
