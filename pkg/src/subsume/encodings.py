"""SAT encodings of subsumption and subsumption resolution over a match set.

Entry ``k`` of the match set is SAT variable ``k + 1`` once
:func:`load_match_variables` has run; each carries its matching
substitution.  Encoders only add constraints, so the subsumption and the
subsumption-resolution encodings of one pair share those variables.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations

from .matchset import MatchSet
from .sat import Model, Solver
from .terms import Clause


class EncodingKind(enum.Enum):
    SR_DIRECT = "direct"
    SR_INDIRECT = "indirect"
    SUBSUMPTION = "subsumption"


class MalformedModel(RuntimeError):
    pass


@dataclass
class Encoding:
    """Constraints emitted for one pair, grouped by the property they express."""

    kind: EncodingKind
    bindings: list[int] = field(default_factory=list)
    existence: list[list[int]] = field(default_factory=list)
    uniqueness: list[list[int]] = field(default_factory=list)
    completeness: list[list[int]] = field(default_factory=list)
    coherence: list[list[int]] = field(default_factory=list)
    structurality: list[list[int]] = field(default_factory=list)
    at_most_one: list[list[int]] = field(default_factory=list)
    column_vars: dict[int, int] = field(default_factory=dict)

    def clauses(self) -> list[list[int]]:
        return (
            self.structurality + self.existence + self.uniqueness
            + self.completeness + self.coherence
        )

    @property
    def num_clauses(self) -> int:
        return (
            len(self.structurality) + len(self.existence) + len(self.uniqueness)
            + len(self.completeness) + len(self.coherence)
        )

    def counts(self) -> dict[str, int]:
        return {
            "bindings": len(self.bindings),
            "existence": len(self.existence),
            "uniqueness": len(self.uniqueness),
            "completeness": len(self.completeness),
            "coherence": len(self.coherence),
            "structurality": len(self.structurality),
            "amo_groups": len(self.at_most_one),
            "column_vars": len(self.column_vars),
        }

    def load(self, solver: Solver) -> None:
        for clause in self.clauses():
            solver.add_clause(clause)
        for group in self.at_most_one:
            solver.add_at_most_one(group)


def load_match_variables(ms: MatchSet, solver: Solver) -> None:
    """Replace all solver variables with one per match entry, in entry order."""
    solver.clear()
    for entry in ms.entries:
        entry.var = solver.new_variable(entry.subst)


def _reset(ms: MatchSet, solver: Solver) -> None:
    solver.reset(len(ms.entries))
    ms.column_vars = {}


def encode_sr_direct(ms: MatchSet, solver: Solver) -> Encoding:
    _reset(ms, solver)
    enc = Encoding(EncodingKind.SR_DIRECT, bindings=[e.var for e in ms.entries])
    enc.existence.append([e.var for e in ms.entries if not e.positive])
    neg_cols = [[e.var for e in col if not e.positive] for col in ms.cols]
    for j, j2 in combinations(range(ms.n_cols), 2):
        for a in neg_cols[j]:
            for b in neg_cols[j2]:
                enc.uniqueness.append([-a, -b])
    for row in ms.rows:
        enc.completeness.append([e.var for e in row])
    for col in ms.cols:
        for p in col:
            if p.positive:
                for n in col:
                    if not n.positive:
                        enc.coherence.append([-p.var, -n.var])
    enc.load(solver)
    return enc


def encode_sr_indirect(ms: MatchSet, solver: Solver) -> Encoding:
    _reset(ms, solver)
    enc = Encoding(EncodingKind.SR_INDIRECT, bindings=[e.var for e in ms.entries])
    for j, col in enumerate(ms.cols):
        negatives = [e.var for e in col if not e.positive]
        if not negatives:
            continue
        c = solver.new_variable()
        enc.column_vars[j] = c
        enc.structurality.append([-c] + negatives)
        for b in negatives:
            enc.structurality.append([c, -b])
    ms.column_vars = dict(enc.column_vars)
    cvars = list(enc.column_vars.values())
    enc.existence.append(list(cvars))
    enc.at_most_one.append(list(cvars))
    for row in ms.rows:
        enc.completeness.append([e.var for e in row])
    for j, c in enc.column_vars.items():
        for e in ms.cols[j]:
            if e.positive:
                enc.coherence.append([-c, -e.var])
    enc.load(solver)
    return enc


def encode_subsumption(ms: MatchSet, solver: Solver) -> Encoding:
    _reset(ms, solver)
    enc = Encoding(EncodingKind.SUBSUMPTION, bindings=[e.var for e in ms.entries if e.positive])
    for row in ms.rows:
        enc.completeness.append([e.var for e in row if e.positive])
    for col in ms.cols:
        group = [e.var for e in col if e.positive]
        if group:
            enc.at_most_one.append(group)
    enc.load(solver)
    return enc


ENCODERS = {
    EncodingKind.SR_DIRECT: encode_sr_direct,
    EncodingKind.SR_INDIRECT: encode_sr_indirect,
    EncodingKind.SUBSUMPTION: encode_subsumption,
}


def resolution_column(model: Model, ms: MatchSet, kind: EncodingKind) -> int:
    if kind is EncodingKind.SR_INDIRECT:
        chosen = [j for j, c in ms.column_vars.items() if model[c]]
        if len(chosen) != 1:
            raise MalformedModel(f"expected one true column variable, got {chosen}")
        return chosen[0]
    if kind is EncodingKind.SR_DIRECT:
        for e in ms.entries:
            if not e.positive and model[e.var]:
                return e.col
        raise MalformedModel("no negative match is true")
    raise ValueError(f"{kind} has no conclusion")


def model_substitution(model: Model, ms: MatchSet) -> dict:
    sigma: dict = {}
    for e in ms.entries:
        if model[e.var]:
            sigma.update(e.subst)
    return sigma


def build_conclusion(model: Model, ms: MatchSet, M: Clause, kind: EncodingKind) -> Clause:
    """``M`` minus its resolution literal as selected by the model."""
    return M.without(resolution_column(model, ms, kind))
