import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qmon.errors import AxiomError, StructuralError
from qmon.monoid import (FiniteMonoid, MonoidAction, SemidirectMonoid, cyclic_group,
                         direct_product, endomorphisms, enumerate_actions,
                         enumerate_monoids, hom_witness, inverse, is_group,
                         is_right_normal_submonoid, is_submonoid, saturating_monoid,
                         semidirect_is_monoid, semidirect_underlying, symmetric_group,
                         trivial_action, validate_action, validate_monoid)

import oracles as O

SMALL = [m for n in (1, 2, 3) for m in enumerate_monoids(n)]


def test_monoid_counts():
    # monoids of order 1..4 up to isomorphism (anti-isomorphic pairs kept apart)
    assert [len(enumerate_monoids(n)) for n in (1, 2, 3, 4)] == [1, 2, 7, 35]


@pytest.mark.parametrize("m", enumerate_monoids(4), ids=lambda m: m.name)
def test_enumerated_tables_are_monoids(m):
    assert validate_monoid(m).ok
    assert O.is_monoid(O.table(m), m.identity)


def test_validate_finds_bad_identity_and_assoc():
    m = FiniteMonoid([[0, 1], [1, 1]], identity=1)
    r = validate_monoid(m)
    assert not r.holds("left identity")
    # x*y = x - y mod 3 is not associative
    i = np.arange(3)
    m = FiniteMonoid((i[:, None] - i[None, :]) % 3)
    assert not validate_monoid(m).holds("associativity")


def test_structural_errors():
    with pytest.raises(StructuralError):
        FiniteMonoid([[0, 1], [1]])
    with pytest.raises(StructuralError):
        FiniteMonoid([[0, 2], [1, 0]])
    with pytest.raises(StructuralError):
        FiniteMonoid([[0]], identity=3)


def test_fixtures():
    assert is_group(cyclic_group(4)) and is_group(symmetric_group(3))
    assert not is_group(saturating_monoid(3))
    assert inverse(cyclic_group(5), 2) == 3
    assert validate_monoid(symmetric_group(3)).ok
    N = saturating_monoid(4)
    assert N.op(3, 3) == 4 and N.op(1, 2) == 3


def test_homomorphisms():
    Z4, Z2 = cyclic_group(4), cyclic_group(2)
    assert hom_witness([0, 1, 0, 1], Z4, Z2) is None
    assert hom_witness([0, 1, 1, 1], Z4, Z2) == ("operation", 1, 1)
    assert hom_witness([1, 0, 1, 0], Z4, Z2) == ("identity", 0)


def test_endomorphisms_of_z3():
    assert sorted(endomorphisms(cyclic_group(3))) == [(0, 0, 0), (0, 1, 2), (0, 2, 1)]


@pytest.mark.parametrize("Y", SMALL, ids=lambda m: m.name)
@pytest.mark.parametrize("X", SMALL, ids=lambda m: m.name)
def test_enumerated_actions_are_complete_and_valid(X, Y):
    acts = enumerate_actions(Y, X)
    found = {a.table.tobytes() for a in acts}
    assert len(found) == len(acts)
    for a in acts:
        assert validate_action(a).ok
    # brute force over all tables with the identity row fixed
    count = 0
    rows = list(itertools.product(range(X.n), repeat=X.n))
    ys = [y for y in range(Y.n) if y != Y.identity]
    for choice in itertools.product(rows, repeat=len(ys)):
        t = [list(range(X.n))] * Y.n
        t = [list(r) for r in t]
        for y, r in zip(ys, choice):
            t[y] = list(r)
        if O.is_action(O.table(X), X.identity, O.table(Y), Y.identity, t):
            count += 1
            assert np.array(t, dtype=np.int32).tobytes() in found
    assert count == len(acts)


def test_trivial_action_gives_direct_product():
    for X in SMALL:
        for Y in SMALL:
            D = direct_product(X, Y)
            for (x1, y1), (x2, y2) in itertools.product(
                    itertools.product(range(X.n), range(Y.n)), repeat=2):
                assert D.split(D.op(D.pair(x1, y1), D.pair(x2, y2))) == (
                    X.op(x1, x2), Y.op(y1, y2))


def test_semidirect_matches_oracle_and_recovers_action():
    Z3 = cyclic_group(3)
    Z2 = cyclic_group(2)
    neg = MonoidAction(Z2, Z3, [[0, 1, 2], [0, 2, 1]])
    S = semidirect_underlying(Z3, Z2, neg)
    assert S.table.tolist() == O.semidirect(O.table(Z3), O.table(Z2), neg.table.tolist())
    assert validate_monoid(S).ok and is_group(S)       # S3
    assert S.recovery_holds()
    assert is_submonoid(S, S.iota1()) and is_submonoid(S, S.iota2())
    assert is_right_normal_submonoid(S, S.iota1())


def test_semidirect_of_non_action_rejected():
    Z2 = cyclic_group(2)
    bad = MonoidAction(Z2, Z2, [[0, 1], [1, 0]])       # alpha(y, 0) != 0
    with pytest.raises(AxiomError):
        semidirect_underlying(Z2, Z2, bad)


def test_action_oracle_needs_the_pair_identity():
    """X = Z2, Y trivial, alpha(1, x) = x + 1 is not an action, yet the
    product table is associative with identity (1, 1); only the identity
    requirement at (0, 1) separates the two sides."""
    X, Y = cyclic_group(2), FiniteMonoid([[0]])
    shift = MonoidAction(Y, X, [[1, 0]])
    assert not validate_action(shift).ok
    assert not semidirect_is_monoid(X, Y, shift.table)
    t = O.semidirect(O.table(X), O.table(Y), [[1, 0]])
    assert O.is_monoid(t, 1) and not O.is_monoid(t, 0)


@st.composite
def small_tables(draw):
    X = draw(st.sampled_from(SMALL))
    Y = draw(st.sampled_from(SMALL))
    rows = st.lists(st.integers(0, X.n - 1), min_size=X.n, max_size=X.n)
    t = draw(st.lists(rows, min_size=Y.n, max_size=Y.n))
    return X, Y, t


@settings(max_examples=400, deadline=None)
@given(small_tables())
def test_action_laws_iff_semidirect_is_monoid(data):
    X, Y, t = data
    act = MonoidAction(Y, X, t)
    assert validate_action(act).ok == semidirect_is_monoid(X, Y, act.table)
    assert validate_action(act).ok == O.is_action(O.table(X), X.identity,
                                                  O.table(Y), Y.identity, t)


def test_action_shape_checked():
    with pytest.raises(StructuralError):
        MonoidAction(cyclic_group(2), cyclic_group(3), [[0, 1, 2]])
    with pytest.raises(StructuralError):
        SemidirectMonoid(cyclic_group(2), cyclic_group(2),
                         MonoidAction(cyclic_group(2), cyclic_group(3), [[0, 1, 2]] * 2))


def test_trivial_action_is_valid():
    assert validate_action(trivial_action(symmetric_group(3), cyclic_group(4))).ok
