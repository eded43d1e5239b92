import pytest

from subsume.terms import SymbolTable
from subsume.tptp import parse_clause

WORKED_PAIRS = {
    1: ("p(X1,X2) | p(f(X2),X3)", "p(g(Y1),c) | ~p(f(c),e)"),
    2: ("p(X1) | q(X2)", "~p(Y) | ~q(c)"),
    3: ("p(X1) | q(X1,X2) | ~p(X2)", "~p(Y) | q(Y,Y)"),
    4: ("p(X1) | q(X2) | r(X3)", "~p(Y1) | q(c)"),
}


def worked_pair(k):
    symbols = SymbolTable()
    side, main = WORKED_PAIRS[k]
    return parse_clause(side, symbols), parse_clause(main, symbols)


@pytest.fixture
def pair():
    return worked_pair


@pytest.fixture
def symbols():
    return SymbolTable()


@pytest.fixture
def clause(symbols):
    def make(text):
        return parse_clause(text, symbols)

    return make


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line.splitlines()[0])
