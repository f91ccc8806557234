import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qmon.errors import AxiomError, StructuralError
from qmon.quantale import Quantale, builtin_chain, builtin_two, validate_quantale

from oracles import RawQ

ALL = [builtin_two(), builtin_chain(3), builtin_chain(3, "truncated_add_reversed"),
       builtin_chain(5), builtin_chain(4, "truncated_add_reversed")]


def diamond():
    # 0 < a, b < 1 with tensor = meet: a frame, unit top
    le = [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]
    t = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]]
    return Quantale(["0", "a", "b", "1"], le, t, 3, name="M2")


@pytest.mark.parametrize("q", ALL + [diamond()], ids=lambda q: q.name)
def test_builtins_validate(q):
    r = validate_quantale(q)
    assert r.ok, str(r)
    assert q.is_pointed


@pytest.mark.parametrize("q", ALL + [diamond()], ids=lambda q: q.name)
def test_lattice_tables_match_bruteforce(q):
    Q = RawQ(q)
    for a, b in itertools.product(range(q.n), repeat=2):
        assert q.join_table[a, b] == Q.join([a, b])
        assert q.meet_table[a, b] == Q.meet([a, b])
    assert q.top == Q.top and q.bottom == Q.bottom


@pytest.mark.parametrize("q", ALL + [diamond()], ids=lambda q: q.name)
def test_distributes_over_small_joins(q):
    Q = RawQ(q)
    subsets = [()] + [(a,) for a in range(q.n)] + list(itertools.combinations(range(q.n), 2))
    for v in range(q.n):
        for S in subsets:
            assert q.tensor(v, q.join(S)) == Q.join([Q.t[v][w] for w in S])
    rng = np.random.default_rng(1)
    for _ in range(50):
        v = int(rng.integers(q.n))
        S = [int(w) for w in rng.integers(0, q.n, size=3)]
        assert q.tensor(v, q.join(S)) == Q.join([Q.t[v][w] for w in S])


@pytest.mark.parametrize("q", ALL, ids=lambda q: q.name)
def test_tensor_monotone(q):
    le = q.leq_table
    for a, b, c, d in itertools.product(range(q.n), repeat=4):
        if le[a, b] and le[c, d]:
            assert le[q.tensor(a, c), q.tensor(b, d)]


def test_two_is_boolean():
    q = builtin_two()
    assert q.tensor(1, 1) == 1 and q.tensor(0, 1) == 0
    assert q.join([]) == 0 and q.meet([]) == 1


def test_cost_chain_truncates():
    q = builtin_chain(3, "truncated_add_reversed")
    assert q.top == 0 and q.bottom == 2
    assert q.tensor(1, 1) == 2 and q.tensor(0, 2) == 2
    assert q.leq(2, 0) and not q.leq(0, 2)


def test_rejects_noncommutative():
    with pytest.raises(AxiomError, match="commutative"):
        Quantale(["0", "1"], [[1, 1], [0, 1]], [[0, 1], [0, 1]], 1)


def test_rejects_bad_shapes():
    with pytest.raises(StructuralError):
        Quantale(["0", "1"], [[1, 1]], [[0, 0], [0, 1]], 1)
    with pytest.raises(StructuralError):
        Quantale(["0", "0"], [[1, 1], [0, 1]], [[0, 0], [0, 1]], 1)
    with pytest.raises(StructuralError):
        Quantale(["0", "1"], [[1, 1], [0, 1]], [[0, 0], [0, 5]], 1)


def test_validate_reports_failures_with_witness():
    # unit 0 in Two is not a unit for min
    q = Quantale(["0", "1"], [[1, 1], [0, 1]], [[0, 0], [0, 1]], 0)
    r = validate_quantale(q)
    assert not r.holds("unit law")
    assert r.witness("unit law") == (1,)
    # a non-lattice order: two incomparable maximal elements
    q = Quantale(["a", "b"], [[1, 0], [0, 1]], [[0, 0], [0, 1]], 1)
    r = validate_quantale(q)
    assert not r.holds("joins exist") and not r.holds("top exists")


def test_json_roundtrip():
    for q in ALL:
        assert Quantale.from_json(q.to_json()) == q


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.sampled_from(["meet", "truncated_add_reversed"]))
def test_chains_are_quantales(n, kind):
    assert validate_quantale(builtin_chain(n, kind)).ok
