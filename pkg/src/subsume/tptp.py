"""Reading and writing the CNF subset of TPTP.

Grammar accepted::

    file     := { "cnf" "(" name "," role "," formula ")" "." }
    formula  := "(" formula ")" | literal { "|" literal } | "$false"
    literal  := "~" atom | term "=" term | term "!=" term | atom
    atom     := lower [ "(" term { "," term } ")" ]
    term     := Upper | lower [ "(" term { "," term } ")" ]

``%`` starts a line comment.  Arity is inferred from first use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .terms import (
    EQUALITY,
    App,
    ArityError,
    Clause,
    Literal,
    SymbolTable,
    TautologyRejected,
    Term,
    Var,
    format_clause,
    normalize_clause,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{line}:{column}: {message}" if line else message)
        self.line = line
        self.column = column


class UnsupportedDialect(ParseError):
    pass


@dataclass
class NamedClause:
    name: str
    role: str
    clause: Clause


@dataclass
class ProblemFile:
    clauses: list[NamedClause] = field(default_factory=list)
    symbols: SymbolTable = field(default_factory=SymbolTable)
    dropped: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<neq>!=)
  | (?P<punct>[(),.|~=])
  | (?P<upper>[A-Z][A-Za-z0-9_]*)
  | (?P<lower>[a-z0-9][A-Za-z0-9_]*|'[^'\n]*')
  | (?P<dollar>\$[a-z_]+)
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> Iterator[_Tok]:
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            yield _Tok(kind, chunk, line, pos - line_start + 1)
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    while True:
        yield _Tok("eof", "", line, pos - line_start + 1)


class _Parser:
    def __init__(self, text: str, symbols: SymbolTable):
        self.toks = _tokenize(text)
        self.lookahead = next(self.toks)
        self.symbols = symbols

    def peek(self) -> _Tok:
        return self.lookahead

    def next(self) -> _Tok:
        tok = self.lookahead
        self.lookahead = next(self.toks)
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.next()
        if tok.text != text:
            found = tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", tok.line, tok.col)
        return tok

    def error(self, message: str, tok: Optional[_Tok] = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.line, tok.col)

    def problem(self) -> ProblemFile:
        problem = ProblemFile(symbols=self.symbols)
        names: set[str] = set()
        while self.peek().kind != "eof":
            head = self.next()
            if head.kind != "lower":
                raise self.error(f"expected annotated formula, found {head.text!r}", head)
            if head.text in ("fof", "tff", "thf", "tcf"):
                raise UnsupportedDialect(
                    f"unsupported dialect {head.text!r}: only cnf is accepted", head.line, head.col
                )
            if head.text != "cnf":
                raise self.error(f"unknown annotated formula {head.text!r}", head)
            self.expect("(")
            name_tok = self.next()
            if name_tok.kind not in ("lower", "upper"):
                raise self.error("expected clause name", name_tok)
            if name_tok.text in names:
                raise self.error(f"duplicate clause name {name_tok.text!r}", name_tok)
            names.add(name_tok.text)
            self.expect(",")
            role = self.next()
            if role.kind != "lower":
                raise self.error("expected role", role)
            self.expect(",")
            self.var_names: dict[str, int] = {}
            lits = self.formula()
            self.expect(")")
            self.expect(".")
            order = sorted(self.var_names, key=self.var_names.get)
            try:
                clause = normalize_clause(lits, order)
            except TautologyRejected:
                problem.dropped.append(name_tok.text)
                continue
            problem.clauses.append(NamedClause(name_tok.text, role.text, clause))
        return problem

    def formula(self) -> list[Literal]:
        if self.peek().text == "(":
            self.next()
            lits = self.formula()
            self.expect(")")
            return lits
        if self.peek().text == "$false":
            self.next()
            return []
        lits = [self.literal()]
        while self.peek().text == "|":
            self.next()
            lits.append(self.literal())
        return lits

    def literal(self) -> Literal:
        tok = self.peek()
        if tok.text == "~":
            self.next()
            inner = self.literal()
            return inner.complement()
        if tok.text == "(":
            self.next()
            inner = self.literal()
            self.expect(")")
            return inner
        lhs = self.term_or_atom()
        op = self.peek().text
        if op in ("=", "!="):
            self.next()
            rhs = self.term()
            lhs_term = self._as_term(lhs, tok)
            try:
                eq = self.symbols.equality()
            except ArityError as exc:
                raise self.error(str(exc), tok) from None
            return Literal(op == "=", eq, (lhs_term, rhs))
        if isinstance(lhs, Var):
            raise self.error("variable used as an atom", tok)
        name, args = lhs
        try:
            pred = self.symbols.predicate(name, len(args))
        except ArityError as exc:
            raise self.error(str(exc), tok) from None
        return Literal(True, pred, tuple(args))

    def term_or_atom(self) -> Union[Var, tuple[str, list[Term]]]:
        tok = self.next()
        if tok.kind == "upper":
            return self._var(tok.text)
        if tok.kind != "lower":
            raise self.error(f"expected term, found {tok.text or 'end of input'!r}", tok)
        args: list[Term] = []
        if self.peek().text == "(":
            self.next()
            args.append(self.term())
            while self.peek().text == ",":
                self.next()
                args.append(self.term())
            self.expect(")")
        return (tok.text, args)

    def term(self) -> Term:
        tok = self.peek()
        parsed = self.term_or_atom()
        return self._as_term(parsed, tok)

    def _as_term(self, parsed, tok: _Tok) -> Term:
        if isinstance(parsed, Var):
            return parsed
        name, args = parsed
        try:
            sym = self.symbols.function(name, len(args))
        except ArityError as exc:
            raise self.error(str(exc), tok) from None
        return App(sym, tuple(args))

    def _var(self, name: str) -> Var:
        index = self.var_names.setdefault(name, len(self.var_names))
        return Var(index)


def parse_cnf(text: Union[str, bytes], symbols: Optional[SymbolTable] = None) -> ProblemFile:
    """Parse a CNF problem; tautologous clauses are dropped into ``dropped``."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return _Parser(text, symbols if symbols is not None else SymbolTable()).problem()


def parse_clause(text: str, symbols: SymbolTable) -> Clause:
    """Parse a bare disjunction such as ``p(X) | ~q(c)``."""
    problem = parse_cnf(f"cnf(c, axiom, {text}).", symbols)
    if not problem.clauses:
        raise TautologyRejected(text)
    return problem.clauses[0].clause


def print_clause(clause: Clause) -> str:
    return format_clause(clause)


def print_problem(problem: ProblemFile) -> str:
    return "".join(
        f"cnf({nc.name}, {nc.role}, {print_clause(nc.clause)}).\n" for nc in problem.clauses
    )
