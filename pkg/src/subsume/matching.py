"""One-way matching of side-premise literals onto main-premise literals.

Only variables of the pattern (side premise) are bound.  Variables of the
target are opaque: they match nothing but an identical pattern binding.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .terms import App, Literal, Term, Var

Substitution = dict  # side-premise variable index -> Term


def _match_args(patterns: Iterable[Term], targets: Iterable[Term], binding: Substitution) -> bool:
    stack = list(zip(patterns, targets))
    while stack:
        s, t = stack.pop()
        if type(s) is Var:
            bound = binding.get(s.index)
            if bound is None:
                binding[s.index] = t
            elif bound != t:
                return False
        elif type(t) is Var or s.symbol is not t.symbol:
            return False
        else:
            stack.extend(zip(s.args, t.args))
    return True


def match_terms(pattern: Term, target: Term) -> Optional[Substitution]:
    binding: Substitution = {}
    return binding if _match_args((pattern,), (target,), binding) else None


def match_literal(
    l: Literal, m: Literal, want_negative: bool, commutative: bool = True
) -> list[Substitution]:
    """All substitutions taking ``l`` to ``m`` (or to ``~m`` if ``want_negative``).

    Binary commutative predicates are matched in both argument orders;
    ``commutative=False`` disables that.  Duplicates are collapsed.
    """
    if l.predicate is not m.predicate:
        return []
    if (l.positive == m.positive) == want_negative:
        return []
    found: list[Substitution] = []
    binding: Substitution = {}
    if _match_args(l.args, m.args, binding):
        found.append(binding)
    if commutative and l.predicate.commutative:
        swapped: Substitution = {}
        if _match_args(l.args, (m.args[1], m.args[0]), swapped) and swapped not in found:
            found.append(swapped)
    return found


def apply_term(term: Term, subst: Substitution) -> Term:
    if type(term) is Var:
        return subst.get(term.index, term)
    if not term.args:
        return term
    return App(term.symbol, tuple(apply_term(a, subst) for a in term.args))


def apply_literal(l: Literal, subst: Substitution) -> Literal:
    return Literal(l.positive, l.predicate, tuple(apply_term(a, subst) for a in l.args))


def compatible(a: Substitution, b: Substitution) -> bool:
    if len(b) < len(a):
        a, b = b, a
    for x, t in a.items():
        u = b.get(x)
        if u is not None and u != t:
            return False
    return True


class BindingTrail:
    """Global substitution with undo-to-mark.

    ``try_extend`` either merges a substitution or leaves the trail untouched.
    Each binding remembers an optional owner (the SAT solver stores the
    variable that introduced it).
    """

    def __init__(self) -> None:
        self.bindings: dict[int, Term] = {}
        self.owners: dict[int, object] = {}
        self._stack: list[int] = []

    def __len__(self) -> int:
        return len(self._stack)

    def __contains__(self, var: int) -> bool:
        return var in self.bindings

    def get(self, var: int) -> Optional[Term]:
        return self.bindings.get(var)

    def owner(self, var: int):
        return self.owners.get(var)

    def mark(self) -> int:
        return len(self._stack)

    def conflict(self, subst: Substitution) -> Optional[int]:
        """First variable of ``subst`` bound here to a different term."""
        bindings = self.bindings
        for x, t in subst.items():
            u = bindings.get(x)
            if u is not None and u != t:
                return x
        return None

    def bind(self, var: int, term: Term, owner=None) -> None:
        assert var not in self.bindings
        self.bindings[var] = term
        self.owners[var] = owner
        self._stack.append(var)

    def try_extend(self, subst: Substitution, owner=None) -> Optional[int]:
        """Merge ``subst``; return the pre-merge mark, or None if incompatible."""
        if self.conflict(subst) is not None:
            return None
        mark = len(self._stack)
        for x, t in subst.items():
            if x not in self.bindings:
                self.bind(x, t, owner)
        return mark

    def undo_to(self, mark: int) -> None:
        stack = self._stack
        while len(stack) > mark:
            x = stack.pop()
            del self.bindings[x]
            del self.owners[x]

    def as_substitution(self) -> Substitution:
        return dict(self.bindings)
