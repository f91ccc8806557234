import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qmon.errors import AxiomError
from qmon.monoid import cyclic_group, enumerate_monoids, saturating_monoid
from qmon.vcat import VRelation, discrete, two_relation
from qmon.vmon import (ConeFunction, VMonoid, VMonoidMorphism, check_M_axioms, cone_of,
                       is_vmon_star, is_vmonoid_bruteforce, is_vmonoid_via_translations,
                       kernel, relation_from_cone, verify_prop4, vmonoid_from_cone,
                       vmonoid_report)

import oracles as O
from fixtures import CHAIN3, CHAINS, COST3, TWO, monoids, relations, vmonoids


def _cones(q, n):
    for vals in itertools.product(range(q.n), repeat=n):
        yield ConeFunction(q, vals)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_vmonoid_checks_agree_with_oracle_over_two(n):
    Q = O.RawQ(TWO)
    for m in monoids(n):
        for r in relations(TWO, n):
            want = O.vmonoid(Q, O.table(m), O.rel(r))
            assert is_vmonoid_bruteforce(m, r) == want
            assert is_vmonoid_via_translations(m, r) == want


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([TWO, CHAIN3, COST3]),
       st.integers(1, 4))
def test_translation_form_matches_bruteforce_on_random_relations(seed, q, n):
    rng = np.random.default_rng(seed)
    ms = enumerate_monoids(n)
    m = ms[int(rng.integers(len(ms)))]
    r = VRelation(q, rng.integers(0, q.n, size=(n, n)))
    assert is_vmonoid_via_translations(m, r) == is_vmonoid_bruteforce(m, r)
    assert is_vmonoid_bruteforce(m, r) == O.vmonoid(O.RawQ(q), O.table(m), O.rel(r))


def test_report_witnesses():
    m = cyclic_group(2)
    r = vmonoid_report(m, two_relation([[1, 1], [0, 1]]))
    assert not r.holds("operation is a V-functor")
    x1, y1, x2, y2 = r.witness("operation is a V-functor")
    # the witness really violates a(x1,y1) & a(x2,y2) <= a(x1+x2, y1+y2)
    a = [[1, 1], [0, 1]]
    t = m.table
    assert a[x1][y1] and a[x2][y2] and not a[t[x1, x2]][t[y1, y2]]
    with pytest.raises(ValueError):
        vmonoid_report(m, discrete(TWO, 2), via="other")


def test_vmonoid_constructor_rejects():
    with pytest.raises(AxiomError):
        VMonoid(cyclic_group(2), two_relation([[1, 1], [0, 1]]))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_M_axioms_match_oracle_over_two(n):
    Q = O.RawQ(TWO)
    for m in monoids(n):
        for P in _cones(TWO, n):
            got = check_M_axioms(m, P).verdicts()
            assert (got["M1"], got["M2"], got["M3"]) == O.m_axioms(Q, O.table(m), m.identity,
                                                                 list(P.values))
            assert O.rel(relation_from_cone(m, P)) == O.cone_rel(Q, O.table(m), list(P.values))
            assert verify_prop4(m, P).ok


@pytest.mark.parametrize("q", CHAINS, ids=lambda q: q.name)
def test_prop4_over_chain(q):
    Q = O.RawQ(q)
    for n in (1, 2, 3):
        for m in monoids(n):
            for P in _cones(q, n):
                assert verify_prop4(m, P).ok
                got = check_M_axioms(m, P).verdicts()
                assert (got["M1"], got["M2"], got["M3"]) == O.m_axioms(
                    Q, O.table(m), m.identity, list(P.values))


def test_two_cone_axioms_are_right_normal_submonoids():
    for n in (1, 2, 3, 4):
        for m in monoids(n):
            for bits in itertools.product((0, 1), repeat=n):
                S = {x for x in range(n) if bits[x]}
                P = ConeFunction(TWO, bits)
                assert check_M_axioms(m, P).ok == O.sets_cone_axioms(O.table(m), m.identity, S)


@pytest.mark.parametrize("q", (TWO,) + CHAINS, ids=lambda q: q.name)
def test_cone_of_relation_from_cone_is_identity_under_M1(q):
    for n in (1, 2, 3):
        for m in monoids(n):
            for P in _cones(q, n):
                if check_M_axioms(m, P).holds("M1"):
                    assert cone_of(VMonoid(m, relation_from_cone(m, P), check=False)) == P


@pytest.mark.parametrize("q", (TWO,) + CHAINS, ids=lambda q: q.name)
def test_vmon_star_is_the_fixed_set(q):
    for V in vmonoids(q, 3):
        back = relation_from_cone(V.monoid, cone_of(V))
        assert (back == V.relation) == is_vmon_star(V)
        # a_P is always below a for a V-monoid
        assert back.le(V.relation)


def test_groups_are_cone_determined():
    for q in (TWO,) + CHAINS:
        for V in vmonoids(q, 3, groups_only=True):
            assert is_vmon_star(V)


def test_non_star_example():
    # saturating {0,1,2} with 1 <= 2 only: the cone {0} does not see it
    m = saturating_monoid(2)
    V = VMonoid(m, two_relation([[1, 0, 0], [0, 1, 1], [0, 0, 1]]))
    assert not is_vmon_star(V)


def test_kernel_of_projection():
    Z4, Z2 = cyclic_group(4), cyclic_group(2)
    src = VMonoid(Z4, discrete(TWO, 4))
    tgt = VMonoid(Z2, discrete(TWO, 2))
    h = VMonoidMorphism(src, tgt, [0, 1, 0, 1])
    K, emb = kernel(h)
    assert emb == (0, 2)
    assert K.monoid.table.tolist() == [[0, 1], [1, 0]]
    with pytest.raises(AxiomError):
        VMonoidMorphism(src, tgt, [0, 1, 1, 1])


def test_vmonoid_from_cone_checks():
    m = cyclic_group(3)
    V = vmonoid_from_cone(m, ConeFunction.indicator(TWO, 3, [0]))
    assert V.relation == discrete(TWO, 3)
    with pytest.raises(AxiomError):
        vmonoid_from_cone(m, ConeFunction.indicator(TWO, 3, [0, 1]))
