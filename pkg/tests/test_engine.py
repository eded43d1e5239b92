import random

import pytest
from hypothesis import given, settings, strategies as st

from subsume.encodings import EncodingKind
from subsume.engine import (
    ClauseSet,
    OutcomeKind,
    Session,
    forward_outcome,
    forward_simplify,
    simplify_to_fixpoint,
)
from subsume.generate import Signature, random_literal, random_pair, _clause
from subsume.oracle import oracle_subsumption, oracle_subsumption_resolution
from subsume.tptp import print_clause

KINDS = [EncodingKind.SR_DIRECT, EncodingKind.SR_INDIRECT]


@pytest.mark.parametrize("kind", KINDS)
def test_check_examples(pair, clause, kind):
    s = Session(kind)
    assert s.check_subsumption(clause("p(X)"), clause("p(c) | q(d)"))
    s.finish_pair()

    L1, M1 = pair(1)
    assert not s.check_subsumption(L1, M1)
    assert print_clause(s.check_subsumption_resolution(L1, M1)) == "p(g(Y1),c)"
    s.finish_pair()

    for k in (2, 3):
        L, M = pair(k)
        assert not s.check_subsumption(L, M)
        assert s.check_subsumption_resolution(L, M) is None
        s.finish_pair()

    before = s.stats["sat_calls"]
    L4, M4 = pair(4)
    assert not s.check_subsumption(L4, M4)
    assert s.check_subsumption_resolution(L4, M4) is None
    assert s.stats["sat_calls"] == before
    assert s.stats["pruned"] == 1


def test_setup_shared(pair):
    s = Session()
    L1, M1 = pair(1)
    s.check_subsumption(L1, M1)
    s.check_subsumption_resolution(L1, M1)
    assert s.stats["fill_match_set"] == 1


def test_sr_without_prior_check(pair):
    s = Session()
    L1, M1 = pair(1)
    assert print_clause(s.check_subsumption_resolution(L1, M1)) == "p(g(Y1),c)"


def test_session_rejects_subsumption_kind():
    with pytest.raises(ValueError):
        Session(EncodingKind.SUBSUMPTION)


def test_forward_simplify_examples(pair, clause):
    s = Session()
    L1, M1 = pair(1)
    F = ClauseSet([L1])
    assert forward_simplify(s, M1, F)
    assert [print_clause(c) for c in F] == [print_clause(L1), "p(g(Y1),c)"]

    M = clause("p(c) | q(d)")
    F = ClauseSet([clause("p(X)"), M])
    assert forward_simplify(s, M, F)
    assert len(F) == 1 and F.key_of(M) is None

    L2, M2 = pair(2)
    F = ClauseSet([L2])
    assert not forward_simplify(s, M2, F)
    assert F.clauses() == [L2]


def test_subsumption_wins_over_earlier_sr(clause):
    # first candidate resolves, second subsumes: M must be removed
    M = clause("p(c) | q(d)")
    F = ClauseSet([clause("~p(X)"), clause("q(Y)"), M])
    out = forward_outcome(Session(), M, F)
    assert out.kind is OutcomeKind.SUBSUMED and out.by == 1


def test_fixpoint_examples(pair, clause):
    L1, M1 = pair(1)
    F = simplify_to_fixpoint(ClauseSet([L1, M1]))
    assert [print_clause(c) for c in F] == [print_clause(L1), "p(g(Y1),c)"]
    F = simplify_to_fixpoint(ClauseSet([clause("p(X)"), clause("p(c)"), clause("p(d)")]))
    assert [print_clause(c) for c in F] == ["p(X)"]


def test_clause_set_index(clause):
    F = ClauseSet()
    a = F.add(clause("p(X) | q(X)"))
    b = F.add(clause("r(c)"))
    assert F.index_consistent()
    assert [k for k, _ in F.candidates(clause("p(c) | q(c) | s(d)"))] == [a]
    F.replace(a, clause("q(X)"))
    F.remove(b)
    assert F.index_consistent()
    assert F.keys() == [a]


def random_clause_set(seed, size=6):
    rng = random.Random(seed)
    sig = Signature(rng)
    clauses = []
    while len(clauses) < size:
        c = _clause([random_literal(rng, sig, rng.randint(1, 3), 2)
                     for _ in range(rng.randint(1, 3))])
        if c is not None:
            clauses.append(c)
    return clauses


def oracle_fixpoint(clauses, choose):
    """Same pass structure as simplify_to_fixpoint, with the oracle deciding each pair.

    ``choose`` picks one conclusion out of the oracle's admissible set.
    """
    F = ClauseSet(clauses)
    changed = True
    while changed:
        changed = False
        for key in F.keys():
            if key not in F:
                continue
            while True:
                M = F[key]
                subsumed, found = False, None
                for _, L in F.candidates(M):
                    if L is M:
                        continue
                    if oracle_subsumption(L, M):
                        subsumed = True
                        break
                    if found is None:
                        found = oracle_subsumption_resolution(L, M) or None
                if subsumed:
                    F.remove(key)
                    changed = True
                    break
                if found is None:
                    break
                F.replace(key, choose(found))
                changed = True
    return F


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_fixpoint_replays_oracle(seed):
    clauses = random_clause_set(seed)
    trace = []
    result = simplify_to_fixpoint(ClauseSet(clauses), Session(), trace=trace)
    chosen = iter([e.outcome.conclusion for e in trace
                   if e.outcome.kind is OutcomeKind.SIMPLIFIED])

    def choose(conclusions):
        conclusion = next(chosen)
        assert conclusion in conclusions
        return conclusion

    replayed = oracle_fixpoint(clauses, choose)
    assert next(chosen, None) is None
    assert replayed.clauses() == result.clauses()


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_index_transparent_and_size_monotone(seed):
    clauses = random_clause_set(seed)
    results = []
    for use_index in (True, False):
        F = ClauseSet(clauses)
        session = Session()
        total = sum(len(c) for c in F)
        for key in F.keys():
            if key in F:
                forward_simplify(session, F[key], F, use_index)
                new_total = sum(len(c) for c in F)
                assert new_total <= total
                total = new_total
                assert F.index_consistent()
        results.append([print_clause(c) for c in F])
    assert results[0] == results[1]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_no_sr_reported_for_subsumed_pair(seed):
    L, M = random_pair(random.Random(seed), 4)
    F = ClauseSet([L])
    out = forward_outcome(Session(), M, F)
    if oracle_subsumption(L, M):
        assert out.kind is OutcomeKind.SUBSUMED
    elif out.kind is OutcomeKind.SIMPLIFIED:
        assert len(out.conclusion) == len(M) - 1
