"""Brute-force deciders used as ground truth.

These enumerate literal-to-literal assignments directly and compose the
matches on a fresh binding trail.  They deliberately avoid the match set,
the SAT solver and the encodings.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

from .matching import BindingTrail, Substitution, apply_literal, match_literal
from .terms import Clause, Literal, Term, subterms
from .tptp import print_clause

DEFAULT_BOUND = 8


class BoundExceeded(ValueError):
    pass


def _check_bound(L: Clause, bound: int) -> None:
    if len(L) > bound:
        raise BoundExceeded(f"side premise has {len(L)} literals, bound is {bound}")


def _search(choices: list[list[tuple[object, Substitution]]], used_ok) -> Iterator[list]:
    """Depth-first over one choice per row, composing substitutions."""
    trail = BindingTrail()
    picked: list = []

    def go(i: int) -> Iterator[list]:
        if i == len(choices):
            yield list(picked)
            return
        for tag, subst in choices[i]:
            if not used_ok(picked, tag):
                continue
            mark = trail.try_extend(subst)
            if mark is None:
                continue
            picked.append(tag)
            yield from go(i + 1)
            picked.pop()
            trail.undo_to(mark)

    yield from go(0)


def oracle_subsumption(
    L: Clause, M: Clause, commutative: bool = True, bound: int = DEFAULT_BOUND
) -> bool:
    """Is there an injective, polarity-preserving compatible map of L into M?"""
    _check_bound(L, bound)
    choices = [
        [(j, s) for j, m in enumerate(M.literals) for s in match_literal(l, m, False, commutative)]
        for l in L.literals
    ]
    for _ in _search(choices, lambda picked, j: j not in picked):
        return True
    return False


def oracle_subsumption_resolution(
    L: Clause, M: Clause, commutative: bool = True, bound: int = DEFAULT_BOUND
) -> frozenset:
    """All conclusions ``M - {m'}`` reachable by subsumption resolution.

    For each candidate resolution literal m', every literal of L must map to
    ~m' or to a literal of M other than m', with at least one mapping to ~m'.
    """
    _check_bound(L, bound)
    conclusions = set()
    for j, m_res in enumerate(M.literals):
        choices = []
        for l in L.literals:
            row = [(("neg", j), s) for s in match_literal(l, m_res, True, commutative)]
            for k, m in enumerate(M.literals):
                if k != j:
                    row.extend((("pos", k), s) for s in match_literal(l, m, False, commutative))
            choices.append(row)
        for picked in _search(choices, lambda picked, tag: True):
            if any(tag[0] == "neg" for tag in picked):
                conclusions.add(M.without(j))
                break
    return frozenset(conclusions)


def brute_force_matches(l: Literal, m: Literal, want_negative: bool,
                        commutative: bool = True) -> list[Substitution]:
    """Every substitution over vars(l), drawn from subterms of m, taking l to m / ~m.

    Exponential; used to check :func:`match_literal` on small literals.
    """
    target = m.complement() if want_negative else m
    targets = [target]
    if commutative and target.predicate.commutative:
        targets.append(Literal(target.positive, target.predicate, target.args[::-1]))
    variables = sorted(set(l.variables()))
    pool: list[Term] = []
    for a in m.args:
        for t in subterms(a):
            if t not in pool:
                pool.append(t)
    found: list[Substitution] = []
    for values in product(pool, repeat=len(variables)):
        subst = dict(zip(variables, values))
        if apply_literal(l, subst) in targets and subst not in found:
            found.append(subst)
    return found


@dataclass
class PairVerdict:
    """Result of both checks on one (L, M) pair.

    ``conclusions`` holds every admissible SR conclusion (oracle) or the one
    the engine produced.
    """

    subsumed: bool
    conclusions: frozenset = frozenset()


@dataclass
class Coherence:
    ok: bool
    report: str = ""


def oracle_verdict(L: Clause, M: Clause, commutative: bool = True,
                   bound: int = DEFAULT_BOUND) -> PairVerdict:
    return PairVerdict(
        oracle_subsumption(L, M, commutative, bound),
        oracle_subsumption_resolution(L, M, commutative, bound),
    )


def check_coherence(engine: PairVerdict, oracle: PairVerdict,
                    L: Optional[Clause] = None, M: Optional[Clause] = None) -> Coherence:
    """Pass iff verdicts agree and the engine's SR conclusion is admissible."""
    problems = []
    if engine.subsumed != oracle.subsumed:
        problems.append(f"subsumption: engine={engine.subsumed} oracle={oracle.subsumed}")
    if bool(engine.conclusions) != bool(oracle.conclusions):
        problems.append(
            f"subsumption resolution: engine={_fmt(engine.conclusions)} "
            f"oracle={_fmt(oracle.conclusions)}"
        )
    elif not engine.conclusions <= oracle.conclusions:
        problems.append(
            f"conclusion {_fmt(engine.conclusions)} not among {_fmt(oracle.conclusions)}"
        )
    if not problems:
        return Coherence(True)
    lines = ["MISMATCH"]
    if L is not None and M is not None:
        lines.append(f"  L: {print_clause(L)}")
        lines.append(f"  M: {print_clause(M)}")
    lines.extend(f"  {p}" for p in problems)
    return Coherence(False, "\n".join(lines))


def _fmt(conclusions) -> str:
    if not conclusions:
        return "none"
    return "{" + "; ".join(sorted(print_clause(c) for c in conclusions)) + "}"
