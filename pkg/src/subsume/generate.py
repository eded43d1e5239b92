"""Clause-pair generators: seeded random pairs, an exhaustive small universe,
and dense all-negative pairs for encoding-size measurements."""

from __future__ import annotations

import random
from itertools import combinations, product
from typing import Iterator, Optional

from .matching import apply_literal
from .terms import (
    App,
    Clause,
    Literal,
    Symbol,
    SymbolTable,
    TautologyRejected,
    Term,
    Var,
    normalize_clause,
)

MAX_DEPTH = 3
MAX_VARS = 3


class Signature:
    """Random signature: 2-4 predicates (maybe one commutative), 0-3 functions."""

    def __init__(self, rng: random.Random) -> None:
        self.symbols = SymbolTable()
        self.predicates: list[Symbol] = []
        for k in range(rng.randint(2, 4)):
            if k == 0 and rng.random() < 0.3:
                self.predicates.append(self.symbols.predicate("e", 2, commutative=True))
            else:
                self.predicates.append(self.symbols.predicate(f"p{k}", rng.randint(1, 2)))
        self.functions: list[Symbol] = [
            self.symbols.function(f"f{k}", rng.randint(0, 2)) for k in range(rng.randint(0, 3))
        ]
        self.constants = [f for f in self.functions if f.arity == 0]


def random_term(rng: random.Random, sig: Signature, n_vars: int, depth: int) -> Term:
    leaves = n_vars + len(sig.constants)
    compound = [f for f in sig.functions if f.arity > 0]
    if depth <= 1 or not compound or rng.random() < 0.55:
        k = rng.randrange(leaves)
        return Var(k) if k < n_vars else App(sig.constants[k - n_vars])
    f = rng.choice(compound)
    return App(f, tuple(random_term(rng, sig, n_vars, depth - 1) for _ in range(f.arity)))


def random_literal(rng: random.Random, sig: Signature, n_vars: int,
                   depth: int = MAX_DEPTH) -> Literal:
    p = rng.choice(sig.predicates)
    args = tuple(random_term(rng, sig, n_vars, depth) for _ in range(p.arity))
    return Literal(rng.random() < 0.5, p, args)


def _clause(lits: list[Literal]) -> Optional[Clause]:
    try:
        c = normalize_clause(lits)
    except TautologyRejected:
        return None
    return c.canonical() if c.literals else None


def _instantiate(rng: random.Random, sig: Signature, L: Clause, n_vars: int) -> list[Literal]:
    subst = {v: random_term(rng, sig, n_vars, 2) for v in L.variables()}
    return [apply_literal(l, subst) for l in L.literals]


def random_pair(rng: random.Random, max_lits: int) -> tuple[Clause, Clause]:
    """One random (side, main) pair over a fresh random signature.

    Most main premises are built from an instance of the side premise (with
    an occasional flipped literal and extra literals) so that subsumption
    and subsumption resolution both occur often.
    """
    while True:
        sig = Signature(rng)
        nl = rng.randint(1, MAX_VARS)
        L = _clause([random_literal(rng, sig, nl) for _ in range(rng.randint(1, max_lits))])
        if L is None:
            continue
        nm = rng.randint(1, MAX_VARS)
        if rng.random() < 0.7:
            lits = _instantiate(rng, sig, L, nm)
            if rng.random() < 0.6:
                k = rng.randrange(len(lits))
                lits[k] = lits[k].complement()
            if rng.random() < 0.3 and len(lits) > 1:
                lits.pop(rng.randrange(len(lits)))
            while len(lits) < max_lits and rng.random() < 0.5:
                lits.append(random_literal(rng, sig, nm, 2))
            rng.shuffle(lits)
        else:
            lits = [random_literal(rng, sig, nm) for _ in range(rng.randint(1, max_lits))]
        M = _clause(lits[:max_lits])
        if M is not None:
            return L, M


def random_pairs(seed: int, count: int, max_lits: int) -> Iterator[tuple[Clause, Clause]]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_pair(rng, max_lits)


def small_universe(max_lits: int = 3) -> list[Clause]:
    """Every clause over p/1, q/1, f/1 and variables x, y with term depth <= 2
    and at most ``max_lits`` distinct literals, one per variable renaming."""
    symbols = SymbolTable()
    p, q = symbols.predicate("p", 1), symbols.predicate("q", 1)
    f = symbols.function("f", 1)
    terms = [Var(0), Var(1), App(f, (Var(0),)), App(f, (Var(1),))]
    lits = [Literal(pos, pred, (t,)) for pred in (p, q) for t in terms for pos in (True, False)]
    seen: dict[Clause, None] = {}
    for n in range(1, max_lits + 1):
        for combo in combinations(lits, n):
            c = _clause(list(combo))
            if c is not None:
                seen.setdefault(_sorted_canonical(c))
    return list(seen)


def _sorted_canonical(c: Clause) -> Clause:
    # literal order is irrelevant to both checks; pick the least variant
    best = None
    for mapping in ({0: 0, 1: 1}, {0: 1, 1: 0}):
        r = c.renamed(mapping)
        key = sorted(r.literals, key=repr)
        cand = Clause(key)
        if best is None or repr(cand) < repr(best):
            best = cand
    return best


def small_universe_pairs(max_lits: int = 3) -> Iterator[tuple[Clause, Clause]]:
    universe = small_universe(max_lits)
    return product(universe, universe)


def dense_negative_pair(n: int, symbols: Optional[SymbolTable] = None) -> tuple[Clause, Clause]:
    """L = p(x1) | ... | p(xn), M = ~p(c1) | ... | ~p(cn): every cell is a negative match."""
    symbols = symbols or SymbolTable()
    p = symbols.predicate("p", 1)
    L = Clause([Literal(True, p, (Var(i),)) for i in range(n)])
    M = Clause([Literal(False, p, (App(symbols.constant(f"c{j}")),)) for j in range(n)])
    return L, M
