"""V-relations, V-categories and V-functors over a fixed finite quantale.

Carriers are index sets 0..n-1. Witnesses are the first failure in
lexicographic scan order.
"""

import itertools

import numpy as np

from . import kernels
from .errors import AxiomError, StructuralError
from .quantale import builtin_two


class VRelation:
    """A matrix of quantale element indices, ``matrix[x, y] = a(x, y)``."""

    def __init__(self, q, matrix):
        try:
            m = np.array(matrix, dtype=np.int64)
        except (ValueError, TypeError):
            raise StructuralError("relation matrix is ragged") from None
        if m.ndim != 2:
            raise StructuralError(f"relation matrix must be 2-d, got shape {m.shape}")
        if m.size and (m.min() < 0 or m.max() >= q.n):
            raise StructuralError("relation entry is not a quantale element")
        m = m.astype(np.int32)
        m.setflags(write=False)
        self.q = q
        self.matrix = m

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def n(self):
        return self.matrix.shape[0]

    def __call__(self, x, y):
        return int(self.matrix[x, y])

    def __eq__(self, other):
        if not isinstance(other, VRelation):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def __repr__(self):
        return f"<VRelation {self.matrix.tolist()}>"

    def le(self, other):
        """Entrywise a <= b."""
        return le_witness(self, other) is None

    def to_json(self):
        return {"matrix": self.matrix.tolist(),
                "labels": [[self.q.elements[v] for v in row] for row in self.matrix.tolist()]}


def le_witness(a, b):
    if a.shape != b.shape:
        raise StructuralError("relations have different shapes")
    bad = np.argwhere(a.q.leq_table[a.matrix, b.matrix] == 0)
    return None if not len(bad) else tuple(int(v) for v in bad[0])


def reflexivity_witness(a):
    _square(a)
    return kernels.reflexive_witness(a.matrix, a.q.leq_table, a.q.unit)


def transitivity_witness(a):
    _square(a)
    return kernels.transitive_witness(a.matrix, a.q.tensor_table, a.q.leq_table)


def is_reflexive(a):
    return reflexivity_witness(a) is None


def is_transitive(a):
    return transitivity_witness(a) is None


def _square(a):
    if a.shape[0] != a.shape[1]:
        raise StructuralError("relation is not square")


class VCategory(VRelation):
    """A reflexive, transitive V-relation; checked at construction."""

    def __init__(self, q, matrix):
        super().__init__(q, matrix)
        _square(self)
        w = reflexivity_witness(self)
        if w is not None:
            raise AxiomError(f"not reflexive at {w}")
        w = transitivity_witness(self)
        if w is not None:
            raise AxiomError(f"not transitive at {w}")


def vfunctor_witness(f, source, target):
    f = np.asarray(f, dtype=np.int32)
    if f.shape != (source.n,) or (f.size and (f.min() < 0 or f.max() >= target.n)):
        raise StructuralError("map does not fit the given carriers")
    return kernels.functor_witness(source.matrix, target.matrix, f, source.q.leq_table)


def is_vfunctor(f, source, target):
    return vfunctor_witness(f, source, target) is None


def tensor_vcat(A, B):
    """(a (x) b)((x, y), (x', y')) = a(x, x') (x) b(y, y'), pair index x * |B| + y."""
    if A.q != B.q:
        raise StructuralError("V-categories over different quantales")
    t = A.q.tensor_table
    nb = B.n
    xs = np.repeat(np.arange(A.n), nb)
    ys = np.tile(np.arange(nb), A.n)
    m = t[A.matrix[xs[:, None], xs[None, :]], B.matrix[ys[:, None], ys[None, :]]]
    return VRelation(A.q, m)


def discrete(q, n):
    m = np.full((n, n), q.bottom, dtype=np.int32)
    np.fill_diagonal(m, q.unit)
    return VRelation(q, m)


def chaotic(q, n):
    return VRelation(q, np.full((n, n), q.top, dtype=np.int32))


def compose(a, b):
    """(a ; b)(x, z) = join over y of a(x, y) (x) b(y, z)."""
    q = a.q
    t, j = q.tensor_table, q.join_table
    n, m = a.shape[0], b.shape[1]
    out = np.full((n, m), q.bottom, dtype=np.int32)
    for y in range(a.shape[1]):
        prod = t[a.matrix[:, y][:, None], b.matrix[y, :][None, :]]
        out = j[out, prod]
    return VRelation(q, out)


def relation_join(a, b):
    return VRelation(a.q, a.q.join_table[a.matrix, b.matrix])


def closure(a):
    """Least V-category above ``a``."""
    q = a.q
    m = a.matrix.copy()
    idx = np.arange(a.n)
    m[idx, idx] = q.join_table[m[idx, idx], q.unit]
    cur = VRelation(q, m)
    while True:
        nxt = relation_join(cur, compose(cur, cur))
        if nxt == cur:
            return cur
        cur = nxt


def from_pairs(q, n, pairs):
    """Least V-category with a(x, y) = top for each listed pair."""
    m = np.full((n, n), q.bottom, dtype=np.int32)
    for x, y in pairs:
        m[x, y] = q.top
    return closure(VRelation(q, m))


def enumerate_preorders(n):
    """All preorders on n points as 0/1 matrices, in lexicographic order."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for bits in itertools.product((0, 1), repeat=len(off)):
        m = np.eye(n, dtype=bool)
        for (i, j), b in zip(off, bits):
            m[i, j] = b
        # transitive iff m o m <= m
        if not (((m.astype(int) @ m.astype(int)) > 0) & ~m).any():
            out.append(m.astype(np.int32))
    return out


def two_relation(matrix):
    """Wrap a 0/1 matrix as a relation over the two-element quantale."""
    return VRelation(builtin_two(), np.asarray(matrix, dtype=np.int32))


def enumerate_vcategories(q, n):
    """All V-categories on n points (brute force over off-diagonal entries)."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    diag_vals = [v for v in range(q.n) if q.leq_table[q.unit, v]]
    out = []
    for diag in itertools.product(diag_vals, repeat=n):
        for vals in itertools.product(range(q.n), repeat=len(off)):
            m = np.zeros((n, n), dtype=np.int32)
            m[np.arange(n), np.arange(n)] = diag
            for (i, j), v in zip(off, vals):
                m[i, j] = v
            r = VRelation(q, m)
            if is_transitive(r):
                out.append(r)
    return out


def random_relation(q, n, rng):
    return VRelation(q, rng.integers(0, q.n, size=(n, n)))
