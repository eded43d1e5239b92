import random

import pytest
from hypothesis import given, settings, strategies as st

from subsume.generate import random_pair
from subsume.terms import EMPTY_CLAUSE, ArityError, Clause, SymbolTable
from subsume.tptp import ParseError, UnsupportedDialect, parse_clause, parse_cnf, print_clause, print_problem


def test_parse_l1(pair):
    L1, _ = pair(1)
    problem = parse_cnf("cnf(l1, axiom, p(X1,X2) | p(f(X2),X3)).")
    (nc,) = problem.clauses
    assert (nc.name, nc.role) == ("l1", "axiom")
    assert print_clause(nc.clause) == print_clause(L1)
    assert len(nc.clause) == 2
    assert nc.clause.variables() == [0, 1, 2]


def test_parse_m2():
    (nc,) = parse_cnf(b"cnf(m2, axiom, ~p(Y) | ~q(c)).").clauses
    assert [l.positive for l in nc.clause] == [False, False]
    assert [l.predicate.name for l in nc.clause] == ["p", "q"]


def test_equality_sugar():
    (nc,) = parse_cnf("cnf(e, axiom, a = b | c != d).").clauses
    pos, negl = nc.clause.literals
    assert pos.predicate is negl.predicate
    assert pos.predicate.name == "=" and pos.predicate.commutative
    assert pos.positive and not negl.positive
    assert print_clause(nc.clause) == "a = b | c != d"


def test_print_examples(pair):
    _, M1 = pair(1)
    assert print_clause(M1) == "p(g(Y1),c) | ~p(f(c),e)"
    assert print_clause(M1.without(1)) == "p(g(Y1),c)"
    assert print_clause(EMPTY_CLAUSE) == "$false"


def test_false_parses_to_empty_clause():
    (nc,) = parse_cnf("cnf(f, negated_conjecture, $false).").clauses
    assert nc.clause == EMPTY_CLAUSE


def test_comments_parentheses_crlf():
    text = "% header\r\ncnf(a, axiom, (p(X) | ~q(X))).\r\n% trailing\r\ncnf(b,axiom,~(r))."
    problem = parse_cnf(text)
    assert [nc.name for nc in problem] == ["a", "b"]
    assert print_clause(problem.clauses[1].clause) == "~r"


def test_tautology_dropped_and_recorded():
    problem = parse_cnf("cnf(t, axiom, p(c) | ~p(c)).\ncnf(u, axiom, p(d)).")
    assert problem.dropped == ["t"]
    assert [nc.name for nc in problem] == ["u"]


def test_syntax_error_position():
    with pytest.raises(ParseError) as err:
        parse_cnf("cnf(a, axiom, p(X)).\ncnf(b, axiom, p(X) | ).")
    assert (err.value.line, err.value.column) == (2, 22)


def test_arity_conflict():
    with pytest.raises(ParseError, match="arity"):
        parse_cnf("cnf(a, axiom, p(X) | p(X,Y)).")


def test_unsupported_dialect():
    with pytest.raises(UnsupportedDialect):
        parse_cnf("fof(a, axiom, ![X]: p(X)).")


def test_duplicate_names():
    with pytest.raises(ParseError, match="duplicate"):
        parse_cnf("cnf(a, axiom, p). cnf(a, axiom, q).")


def test_same_name_predicate_and_function():
    c = parse_clause("p(p)", SymbolTable())
    assert c[0].predicate.name == c[0].args[0].symbol.name == "p"


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**6))
def test_round_trip(seed):
    L, M = random_pair(random.Random(seed), 5)
    for c in (L, M):
        text = print_clause(c)
        reparsed = parse_clause(text, SymbolTable())
        assert print_clause(reparsed) == text
        assert len(reparsed) == len(c)


def test_round_trip_structural(clause, symbols):
    c = clause("p(f(X),Y) | ~q(Y,g(c)) | X = Y")
    assert parse_clause(print_clause(c), symbols) == c
    problem = parse_cnf("cnf(a, axiom, r(X) | s(c)).\ncnf(b, hypothesis, ~s(Y)).", symbols)
    assert parse_cnf(print_problem(problem), symbols).clauses == problem.clauses
