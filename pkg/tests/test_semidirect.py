import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qmon.errors import AxiomError, StructuralError
from qmon.monoid import MonoidAction, cyclic_group, enumerate_actions, trivial_action
from qmon.quantale import Quantale, validate_quantale
from qmon.semidirect import (alpha_bar_is_vfunctor, corollary2_group_lex,
                             corollary3_group_wlex, lemma1_lex_eq_wlex,
                             lemma3_wlex_transitive, lemma4_lex_transitive,
                             lex_relation, lex_transitive_group_criterion, pi1_lemma,
                             prop2_wlex_vmonoid, prop3_tensor_vmonoid,
                             prop6_lex_vmonoid, pullback_meet, standard_candidates,
                             tensor_relation, wlex_relation)
from qmon.vcat import discrete, two_relation
from qmon.vmon import VMonoid

import oracles as O
from fixtures import CHAIN3, CHAINS, COST3, TWO, random_vcategory, triples, vmonoids


def _sweep(q, n):
    return list(triples(vmonoids(q, n), vmonoids(q, n)))


@pytest.mark.parametrize("q", (TWO,) + CHAINS, ids=lambda q: q.name)
def test_relations_match_oracle(q):
    Q = O.RawQ(q)
    vs = vmonoids(q, 2)
    for X in vs:
        for Y in vs:
            a, b = O.rel(X.relation), O.rel(Y.relation)
            assert O.rel(tensor_relation(X, Y)) == O.tensor_rel(Q, a, b)
            assert O.rel(lex_relation(X, Y)) == O.lex(a, b)
            assert O.rel(wlex_relation(X, Y)) == O.wlex(a, b, Y.identity)
            assert O.rel(pullback_meet(X, Y)) == O.meet_rel(Q, a, b)
            # a (x) b <= lex <= wlex
            assert tensor_relation(X, Y).le(lex_relation(X, Y))
            assert lex_relation(X, Y).le(wlex_relation(X, Y))


def test_nontrivial_y_unit_for_bare_relations():
    a = two_relation([[1, 0], [0, 1]])
    b = two_relation([[1, 1], [0, 1]])
    w0 = wlex_relation(a, b, y_unit=0)
    w1 = wlex_relation(a, b, y_unit=1)
    assert O.rel(w0) == O.wlex(O.rel(a), O.rel(b), 0)
    assert O.rel(w1) == O.wlex(O.rel(a), O.rel(b), 1)
    assert w0 != w1


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([TWO, CHAIN3, COST3]),
       st.integers(1, 3), st.integers(1, 3))
def test_lemmas_agree_on_random_vcategories(seed, q, nx, ny):
    rng = np.random.default_rng(seed)
    a, b = random_vcategory(q, nx, rng), random_vcategory(q, ny, rng)
    unit = int(rng.integers(ny))
    Q = O.RawQ(q)
    for check in (lemma1_lex_eq_wlex(a, b, unit), lemma3_wlex_transitive(a, b, unit),
                  lemma4_lex_transitive(a, b, unit)):
        assert check.agree, check
    assert lemma3_wlex_transitive(a, b, unit).computed == O.transitive(
        Q, O.wlex(O.rel(a), O.rel(b), unit))
    assert lemma4_lex_transitive(a, b, unit).computed == O.transitive(Q, O.lex(O.rel(a), O.rel(b)))


def test_lemma1_example():
    a = discrete(TWO, 2)
    b = two_relation([[1, 1], [0, 1]])
    c = lemma1_lex_eq_wlex(a, b)
    assert c.agree and not c.computed
    chaotic = two_relation([[1, 1], [1, 1]])
    assert lemma1_lex_eq_wlex(chaotic, b).computed


@pytest.mark.parametrize("q", (TWO,) + CHAINS, ids=lambda q: q.name)
def test_propositions_agree_small(q):
    Q = O.RawQ(q)
    for X, Y, act in _sweep(q, 2):
        for fn in (prop2_wlex_vmonoid, prop3_tensor_vmonoid, prop6_lex_vmonoid):
            c = fn(X, Y, act)
            assert c.agree, (fn.__name__, X, Y, act)
        S = O.semidirect(O.table(X.monoid), O.table(Y.monoid), act.table.tolist())
        a, b = O.rel(X.relation), O.rel(Y.relation)
        assert prop3_tensor_vmonoid(X, Y, act).computed == O.vmonoid(Q, S, O.tensor_rel(Q, a, b))
        assert prop2_wlex_vmonoid(X, Y, act).computed == O.vmonoid(Q, S, O.wlex(a, b, Y.identity))
        assert prop6_lex_vmonoid(X, Y, act).computed == O.vmonoid(Q, S, O.lex(a, b))


def test_alpha_bar_on_negation():
    Z3, Z2 = cyclic_group(3), cyclic_group(2)
    neg = MonoidAction(Z2, Z3, [[0, 1, 2], [0, 2, 1]])
    X = VMonoid(Z3, discrete(TWO, 3))
    Y = VMonoid(Z2, discrete(TWO, 2))
    assert alpha_bar_is_vfunctor(X, Y, neg)
    assert prop3_tensor_vmonoid(X, Y, neg) == (True, True)


def test_group_corollaries():
    groups = vmonoids(TWO, 3, groups_only=True) + vmonoids(COST3, 3, groups_only=True)
    for X in groups:
        for Y in groups:
            if X.q != Y.q:
                continue
            for act in enumerate_actions(Y.monoid, X.monoid):
                c3 = corollary3_group_wlex(X, Y, act)
                c2 = corollary2_group_lex(X, Y, act)
                assert c3.agree and c2.agree
                assert lex_transitive_group_criterion(X, Y) == lemma4_lex_transitive(X, Y).computed
                # Prop 2 criterion with Y a group forces lex = wlex
                if prop2_wlex_vmonoid(X, Y, act).criterion:
                    assert lemma1_lex_eq_wlex(X, Y).computed


def test_group_only_operations_refuse_monoids():
    X = VMonoid(cyclic_group(2), discrete(TWO, 2))
    N = [m for m in vmonoids(TWO, 2) if m.n == 2 and m.monoid.table[1, 1] == 1][0]
    with pytest.raises(AxiomError):
        corollary3_group_wlex(X, N, trivial_action(N.monoid, X.monoid))
    with pytest.raises(AxiomError):
        corollary2_group_lex(X, N, trivial_action(N.monoid, X.monoid))
    with pytest.raises(AxiomError):
        lex_transitive_group_criterion(N, X)


def test_mismatched_action_rejected():
    X = VMonoid(cyclic_group(2), discrete(TWO, 2))
    Y = VMonoid(cyclic_group(3), discrete(TWO, 3))
    with pytest.raises(StructuralError):
        prop3_tensor_vmonoid(X, Y, trivial_action(X.monoid, Y.monoid))


def test_non_pointed_quantale_rejected():
    # 0 absorbing, otherwise max; unit 1 is not the top 2
    t = [[0, 0, 0], [0, 1, 2], [0, 2, 2]]
    le = [[1, 1, 1], [0, 1, 1], [0, 0, 1]]
    q = Quantale(["0", "1", "2"], le, t, 1)
    assert validate_quantale(q).ok and not q.is_pointed
    a = discrete(q, 2)
    with pytest.raises(AxiomError, match="pointed"):
        lemma3_wlex_transitive(a, a)


def test_pi1_on_standard_candidates():
    for q in (TWO, COST3):
        for X, Y, act in _sweep(q, 2):
            for name, cand in standard_candidates(X, Y, act).items():
                chk = pi1_lemma(X, Y, act, cand.relation)
                if cand.is_vmonoid() and cand.relation.le(wlex_relation(X, Y)):
                    assert chk.agree, (name, X, Y)
                assert cand.to_json()["kind"] == name
