"""Small CDCL solver whose variables may carry matching substitutions.

Literals are DIMACS-style signed integers over variables ``1..n``.  Setting a
substitution-carrying variable true merges its substitution into a global
:class:`~subsume.matching.BindingTrail`; an incompatible merge is a conflict
explained by the binary clause ``~v | ~w`` where ``w`` introduced the clashing
binding.  AtMostOne groups are propagated natively.

Decisions pick the lowest unassigned variable that occurs in a constraint and
try true first.  By default conflicts are handled by chronological
backtracking (flip the last unflipped decision); ``learning=True`` switches to
first-UIP clause learning with non-chronological backjumping.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .matching import BindingTrail, Substitution
from .terms import format_term


class Status(enum.Enum):
    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"  # conflict budget exhausted


@dataclass(frozen=True)
class Model:
    values: tuple  # values[v] for v in 1..n; index 0 unused

    def __getitem__(self, var: int) -> bool:
        return self.values[var]

    def __len__(self) -> int:
        return len(self.values) - 1

    def true_vars(self) -> list[int]:
        return [v for v in range(1, len(self.values)) if self.values[v]]


class Solver:
    def __init__(self, learning: bool = False, conflict_budget: Optional[int] = None) -> None:
        self.learning = learning
        self.conflict_budget = conflict_budget
        self.substs: list[Optional[Substitution]] = [None]
        self.reset()
        self.stats = {"solves": 0, "conflicts": 0, "decisions": 0, "propagations": 0}
        self.last_conflicts = 0

    # -- problem construction ------------------------------------------------

    @property
    def num_vars(self) -> int:
        return len(self.substs) - 1

    def new_variable(self, subst: Optional[Substitution] = None) -> int:
        self.substs.append(subst if subst else None)
        return len(self.substs) - 1

    def substitution(self, var: int) -> Optional[Substitution]:
        return self.substs[var]

    def clear(self) -> None:
        """Drop all variables and constraints."""
        self.substs = [None]
        self.reset()

    def reset(self, num_vars: Optional[int] = None) -> None:
        """Drop constraints; keep variables (truncated to ``num_vars`` if given)."""
        if num_vars is not None:
            del self.substs[num_vars + 1 :]
        self.clauses: list[list[int]] = []
        self.amo_groups: list[list[int]] = []
        self.has_empty = False
        self.model: Optional[Model] = None

    def add_clause(self, lits: Iterable[int]) -> None:
        clause = list(dict.fromkeys(lits))
        for l in clause:
            if l == 0 or abs(l) > self.num_vars:
                raise ValueError(f"literal {l} out of range")
        if not clause:
            self.has_empty = True
        self.clauses.append(clause)

    def add_at_most_one(self, variables: Iterable[int]) -> None:
        group = list(dict.fromkeys(variables))
        for v in group:
            if v <= 0 or v > self.num_vars:
                raise ValueError(f"variable {v} out of range")
        self.amo_groups.append(group)

    # -- search ----------------------------------------------------------------

    def _value(self, lit: int) -> Optional[bool]:
        v = self.assign[lit if lit > 0 else -lit]
        if v is None:
            return None
        return v if lit > 0 else not v

    def _enqueue(self, lit: int, reason: Optional[Sequence[int]]) -> None:
        v = lit if lit > 0 else -lit
        self.assign[v] = lit > 0
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _watch(self, clause: list[int]) -> None:
        self.watches[clause[0]].append(clause)
        self.watches[clause[1]].append(clause)

    def _setup(self) -> bool:
        """Build search structures; False if trivially unsatisfiable."""
        n = self.num_vars
        self.assign: list[Optional[bool]] = [None] * (n + 1)
        self.level = [0] * (n + 1)
        self.reason: list[Optional[Sequence[int]]] = [None] * (n + 1)
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.bind_marks: list[int] = []
        self.flipped: list[bool] = []
        self.qhead = 0
        self.binding = BindingTrail()
        self.watches: dict[int, list[list[int]]] = {}
        for v in range(1, n + 1):
            self.watches[v] = []
            self.watches[-v] = []
        active = [False] * (n + 1)
        self.amo_of: list[list[list[int]]] = [[] for _ in range(n + 1)]
        for group in self.amo_groups:
            for v in group:
                active[v] = True
                self.amo_of[v].append(group)
        units = []
        self.learnts: list[list[int]] = []
        for clause in self.clauses:
            for l in clause:
                active[abs(l)] = True
            if len(clause) == 1:
                units.append(clause)
            elif len(clause) > 1:
                self._watch(list(clause))  # watching reorders literals
        self.active = active
        # per side-premise variable: (sat var, term) pairs, for theory propagation
        occurs: dict[int, list[tuple[int, object]]] = {}
        for v in range(1, n + 1):
            subst = self.substs[v]
            if active[v] and subst:
                for x, t in subst.items():
                    occurs.setdefault(x, []).append((v, t))
        self.occurs = occurs
        if self.has_empty:
            return False
        for clause in units:
            value = self._value(clause[0])
            if value is False:
                return False
            if value is None:
                self._enqueue(clause[0], clause)
        return True

    def _propagate(self) -> Optional[Sequence[int]]:
        """Run to fixpoint; return a conflict clause or None."""
        trail = self.trail
        assign = self.assign
        while self.qhead < len(trail):
            lit = trail[self.qhead]
            self.qhead += 1
            self.stats["propagations"] += 1
            if lit > 0:
                conflict = self._propagate_theory(lit)
                if conflict is not None:
                    return conflict
                for group in self.amo_of[lit]:
                    for u in group:
                        if u == lit:
                            continue
                        value = assign[u]
                        if value is True:
                            return [-lit, -u]
                        if value is None:
                            self._enqueue(-u, [-u, -lit])
            conflict = self._propagate_clauses(-lit)
            if conflict is not None:
                return conflict
        return None

    def _propagate_theory(self, v: int) -> Optional[Sequence[int]]:
        subst = self.substs[v]
        if not subst:
            return None
        binding = self.binding
        assign = self.assign
        for x, t in subst.items():
            bound = binding.get(x)
            if bound is None:
                binding.bind(x, t, v)
                for u, tu in self.occurs.get(x, ()):
                    if tu != t and assign[u] is None:
                        self._enqueue(-u, [-u, -v])
            elif bound != t:
                return [-v, -binding.owner(x)]
        return None

    def _propagate_clauses(self, false_lit: int) -> Optional[Sequence[int]]:
        watchers = self.watches[false_lit]
        kept: list[list[int]] = []
        conflict = None
        i = 0
        while i < len(watchers):
            clause = watchers[i]
            i += 1
            if clause[0] == false_lit:
                clause[0], clause[1] = clause[1], clause[0]
            first = clause[0]
            if self._value(first) is True:
                kept.append(clause)
                continue
            for k in range(2, len(clause)):
                if self._value(clause[k]) is not False:
                    clause[1], clause[k] = clause[k], clause[1]
                    self.watches[clause[1]].append(clause)
                    break
            else:
                kept.append(clause)
                if self._value(first) is False:
                    conflict = clause
                    kept.extend(watchers[i:])
                    break
                self._enqueue(first, clause)
        self.watches[false_lit] = kept
        return conflict

    def _new_level(self, flipped: bool) -> None:
        self.trail_lim.append(len(self.trail))
        self.bind_marks.append(self.binding.mark())
        self.flipped.append(flipped)

    def _cancel_until(self, level: int) -> None:
        if len(self.trail_lim) <= level:
            return
        start = self.trail_lim[level]
        for lit in self.trail[start:]:
            v = abs(lit)
            self.assign[v] = None
            self.reason[v] = None
        del self.trail[start:]
        self.binding.undo_to(self.bind_marks[level])
        del self.trail_lim[level:]
        del self.bind_marks[level:]
        del self.flipped[level:]
        self.qhead = len(self.trail)

    def _analyze(self, conflict: Sequence[int]) -> tuple[list[int], int]:
        """First-UIP learnt clause and the level to backjump to."""
        current = len(self.trail_lim)
        seen = set()
        learnt = [0]
        pending = 0
        idx = len(self.trail) - 1
        reason = conflict
        p = 0
        while True:
            for q in reason:
                v = abs(q)
                if v == p or v in seen or self.level[v] == 0:
                    continue
                seen.add(v)
                if self.level[v] == current:
                    pending += 1
                else:
                    learnt.append(q)
            while abs(self.trail[idx]) not in seen:
                idx -= 1
            lit = self.trail[idx]
            idx -= 1
            p = abs(lit)
            seen.discard(p)
            pending -= 1
            if pending == 0:
                break
            reason = self.reason[p]
        learnt[0] = -lit
        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda k: self.level[abs(learnt[k])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, self.level[abs(learnt[1])]

    def _decide(self) -> bool:
        for v in range(self._next_var, self.num_vars + 1):
            if self.active[v] and self.assign[v] is None:
                self._next_var = v
                self.stats["decisions"] += 1
                self._new_level(False)
                self._enqueue(v, None)
                return True
        return False

    def solve(self) -> Status:
        """Search for a model; afterwards the solver is back at level 0."""
        self.stats["solves"] += 1
        self.model = None
        self.last_conflicts = 0
        if not self._setup():
            return Status.UNSAT
        status = self._search()
        if status is Status.SAT:
            self.model = Model(
                tuple([False] + [bool(self.assign[v]) for v in range(1, self.num_vars + 1)])
            )
        self._cancel_until(0)
        self.binding.undo_to(0)
        return status

    def _search(self) -> Status:
        self._next_var = 1
        while True:
            conflict = self._propagate()
            if conflict is None:
                if not self._decide():
                    return Status.SAT
                continue
            self.stats["conflicts"] += 1
            self.last_conflicts += 1
            if not self.trail_lim:
                return Status.UNSAT
            if self.conflict_budget is not None and self.last_conflicts > self.conflict_budget:
                return Status.UNKNOWN
            if self.learning:
                learnt, back = self._analyze(conflict)
                self._cancel_until(back)
                if len(learnt) > 1:
                    self.learnts.append(learnt)
                    self._watch(learnt)
                self._enqueue(learnt[0], learnt)
            else:
                while self.flipped and self.flipped[-1]:
                    self._cancel_until(len(self.trail_lim) - 1)
                if not self.trail_lim:
                    return Status.UNSAT
                top = len(self.trail_lim) - 1
                decision = self.trail[self.trail_lim[top]]
                self._cancel_until(top)
                self._new_level(True)
                self._enqueue(-decision, None)
            self._next_var = 1

    # -- inspection ------------------------------------------------------------

    def dump(self) -> str:
        """DIMACS-like text of the loaded instance, for bug reports."""
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        for v in range(1, self.num_vars + 1):
            subst = self.substs[v]
            if subst:
                for x, t in sorted(subst.items()):
                    lines.append(f"c bind {v} X{x} {format_term(t)}")
        for clause in self.clauses:
            lines.append(" ".join(map(str, clause + [0])))
        for group in self.amo_groups:
            lines.append("amo " + " ".join(map(str, group + [0])))
        return "\n".join(lines) + "\n"
