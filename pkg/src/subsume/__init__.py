"""Subsumption and subsumption resolution between first-order clauses,
decided with a substitution-aware SAT solver."""

from .encodings import EncodingKind
from .engine import ClauseSet, Session, forward_simplify, simplify_to_fixpoint
from .oracle import oracle_subsumption, oracle_subsumption_resolution
from .terms import Clause, Literal, SymbolTable, normalize_clause
from .tptp import parse_clause, parse_cnf, print_clause

__all__ = [
    "Clause",
    "ClauseSet",
    "EncodingKind",
    "Literal",
    "Session",
    "SymbolTable",
    "forward_simplify",
    "normalize_clause",
    "oracle_subsumption",
    "oracle_subsumption_resolution",
    "parse_clause",
    "parse_cnf",
    "print_clause",
    "simplify_to_fixpoint",
]
