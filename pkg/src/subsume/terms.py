"""First-order terms, literals and clauses.

Symbols are interned per :class:`SymbolTable` and compared by identity.
Variables are clause-scoped: ``Var(0)`` in one clause has nothing to do with
``Var(0)`` in another.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Union

EQUALITY = "="


class ArityError(ValueError):
    """A symbol was used with an arity different from its declaration."""


class TautologyRejected(ValueError):
    """A clause contains an atom together with its complement."""


@dataclass(frozen=True, eq=False)
class Symbol:
    name: str
    arity: int
    id: int
    is_predicate: bool = False
    commutative: bool = False

    def __repr__(self) -> str:
        return f"{self.name}/{self.arity}"


class SymbolTable:
    """Append-only registry of predicate and function symbols.

    Predicates and functions live in separate namespaces; each gets a dense
    id in order of first declaration.  The equality predicate is always
    commutative.
    """

    def __init__(self) -> None:
        self._predicates: dict[str, Symbol] = {}
        self._functions: dict[str, Symbol] = {}
        self._by_id: list[Symbol] = []

    def predicate(self, name: str, arity: int, commutative: bool = False) -> Symbol:
        if name == EQUALITY:
            if arity != 2:
                raise ArityError(f"equality has arity 2, not {arity}")
            commutative = True
        if commutative and arity != 2:
            raise ArityError(f"commutative predicate {name} must be binary")
        return self._declare(self._predicates, name, arity, True, commutative)

    def function(self, name: str, arity: int) -> Symbol:
        return self._declare(self._functions, name, arity, False, False)

    def constant(self, name: str) -> Symbol:
        return self.function(name, 0)

    def equality(self) -> Symbol:
        return self.predicate(EQUALITY, 2)

    def _declare(self, table, name, arity, is_predicate, commutative) -> Symbol:
        sym = table.get(name)
        if sym is not None:
            if sym.arity != arity:
                kind = "predicate" if is_predicate else "function"
                raise ArityError(
                    f"{kind} {name} declared with arity {sym.arity}, used with {arity}"
                )
            return sym
        sym = Symbol(name, arity, len(self._by_id), is_predicate, commutative)
        table[name] = sym
        self._by_id.append(sym)
        return sym

    def __getitem__(self, symbol_id: int) -> Symbol:
        return self._by_id[symbol_id]

    def __len__(self) -> int:
        return len(self._by_id)

    def predicates(self) -> list[Symbol]:
        return list(self._predicates.values())

    def functions(self) -> list[Symbol]:
        return list(self._functions.values())


@dataclass(frozen=True, slots=True)
class Var:
    index: int

    def __repr__(self) -> str:
        return f"X{self.index}"


@dataclass(frozen=True, slots=True)
class App:
    symbol: Symbol
    args: tuple = ()

    def __post_init__(self) -> None:
        if len(self.args) != self.symbol.arity:
            raise ArityError(
                f"{self.symbol.name} expects {self.symbol.arity} arguments, got {len(self.args)}"
            )

    def __repr__(self) -> str:
        return format_term(self)


Term = Union[Var, App]


def app(symbol: Symbol, *args: Term) -> App:
    return App(symbol, tuple(args))


def term_vars(term: Term) -> Iterator[int]:
    """Variable indices of ``term`` in depth-first left-to-right order."""
    stack = [term]
    while stack:
        t = stack.pop()
        if type(t) is Var:
            yield t.index
        else:
            stack.extend(reversed(t.args))


def subterms(term: Term) -> Iterator[Term]:
    stack = [term]
    while stack:
        t = stack.pop()
        yield t
        if type(t) is App:
            stack.extend(t.args)


def term_depth(term: Term) -> int:
    if type(term) is Var or not term.args:
        return 1
    return 1 + max(term_depth(a) for a in term.args)


@dataclass(frozen=True, slots=True)
class Literal:
    positive: bool
    predicate: Symbol
    args: tuple = ()

    def __post_init__(self) -> None:
        if len(self.args) != self.predicate.arity:
            raise ArityError(
                f"{self.predicate.name} expects {self.predicate.arity} arguments, "
                f"got {len(self.args)}"
            )

    def complement(self) -> Literal:
        return Literal(not self.positive, self.predicate, self.args)

    def is_complement_of(self, other: Literal) -> bool:
        return (
            self.positive != other.positive
            and self.predicate is other.predicate
            and self.args == other.args
        )

    def variables(self) -> Iterator[int]:
        for a in self.args:
            yield from term_vars(a)

    def __repr__(self) -> str:
        return format_literal(self)


def lit(predicate: Symbol, *args: Term, positive: bool = True) -> Literal:
    return Literal(positive, predicate, tuple(args))


def neg(predicate: Symbol, *args: Term) -> Literal:
    return Literal(False, predicate, tuple(args))


def predicate_mask(predicate: Symbol) -> int:
    return 1 << (predicate.id % 64)


class Clause:
    """A disjunction of literals, kept in input order.

    Equality and hashing are structural (literal sequence only).  The header
    caches per-(predicate, polarity) counts and a 64-bit predicate mask used
    by the pruning checks.
    """

    __slots__ = ("literals", "var_names", "header", "predicate_counts", "mask", "_hash")

    def __init__(self, literals: Iterable[Literal], var_names: Optional[Sequence[str]] = None):
        self.literals: tuple[Literal, ...] = tuple(literals)
        self.var_names = tuple(var_names) if var_names is not None else None
        self.header: Counter = Counter((l.predicate.id, l.positive) for l in self.literals)
        self.predicate_counts: Counter = Counter(l.predicate.id for l in self.literals)
        mask = 0
        for l in self.literals:
            mask |= predicate_mask(l.predicate)
        self.mask = mask
        self._hash = hash(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __getitem__(self, i: int) -> Literal:
        return self.literals[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Clause):
            return NotImplemented
        return self.literals == other.literals

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Clause({format_clause(self)})"

    def is_empty(self) -> bool:
        return not self.literals

    def variables(self) -> list[int]:
        """Distinct variable indices in order of first occurrence."""
        seen: dict[int, None] = {}
        for l in self.literals:
            for v in l.variables():
                seen.setdefault(v)
        return list(seen)

    def num_variables(self) -> int:
        vs = self.variables()
        return max(vs) + 1 if vs else 0

    def predicates(self) -> set[int]:
        return set(self.predicate_counts)

    def without(self, index: int) -> Clause:
        """Copy of this clause with the literal at ``index`` removed."""
        lits = self.literals[:index] + self.literals[index + 1 :]
        return Clause(lits, self.var_names)

    def var_name(self, index: int) -> str:
        if self.var_names is not None and index < len(self.var_names):
            return self.var_names[index]
        return f"X{index}"

    def renamed(self, mapping: dict[int, int]) -> Clause:
        """Apply a variable bijection; names are dropped."""
        return Clause(
            Literal(l.positive, l.predicate, tuple(_rename(a, mapping) for a in l.args))
            for l in self.literals
        )

    def canonical(self) -> Clause:
        """Renumber variables by first occurrence (names are dropped)."""
        return self.renamed({v: i for i, v in enumerate(self.variables())})

    def is_variant_of(self, other: Clause) -> bool:
        return self.canonical() == other.canonical()

    def header_consistent(self) -> bool:
        fresh = Clause(self.literals)
        return (
            fresh.header == self.header
            and fresh.mask == self.mask
            and fresh.predicate_counts == self.predicate_counts
        )


def _rename(term: Term, mapping: dict[int, int]) -> Term:
    if type(term) is Var:
        return Var(mapping.get(term.index, term.index))
    if not term.args:
        return term
    return App(term.symbol, tuple(_rename(a, mapping) for a in term.args))


EMPTY_CLAUSE = Clause(())


def normalize_clause(raw: Iterable[Literal], var_names: Optional[Sequence[str]] = None) -> Clause:
    """Drop duplicate literals and reject tautologies.

    Raises :class:`TautologyRejected` if the input contains an atom and its
    complement.
    """
    kept: list[Literal] = []
    seen: set[Literal] = set()
    for l in raw:
        if l in seen:
            continue
        if l.complement() in seen:
            raise TautologyRejected(f"complementary literals {format_literal(l)}")
        seen.add(l)
        kept.append(l)
    return Clause(kept, var_names)


def clause_cardinality(clause: Clause) -> int:
    return len(clause.literals)


def is_tautology(raw: Iterable[Literal]) -> bool:
    seen = set(raw)
    return any(l.complement() in seen for l in seen)


def format_term(term: Term, names: Optional[Clause] = None) -> str:
    if type(term) is Var:
        return names.var_name(term.index) if names is not None else f"X{term.index}"
    if not term.args:
        return term.symbol.name
    inner = ",".join(format_term(a, names) for a in term.args)
    return f"{term.symbol.name}({inner})"


def format_literal(literal: Literal, names: Optional[Clause] = None) -> str:
    if literal.predicate.name == EQUALITY:
        op = "=" if literal.positive else "!="
        lhs, rhs = (format_term(a, names) for a in literal.args)
        return f"{lhs} {op} {rhs}"
    if literal.args:
        inner = ",".join(format_term(a, names) for a in literal.args)
        atom = f"{literal.predicate.name}({inner})"
    else:
        atom = literal.predicate.name
    return atom if literal.positive else f"~{atom}"


def format_clause(clause: Clause) -> str:
    if not clause.literals:
        return "$false"
    return " | ".join(format_literal(l, clause) for l in clause.literals)
