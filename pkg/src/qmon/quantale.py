"""Finite commutative unital quantales.

A quantale is stored as an order matrix and a tensor table over dense
element indices. Join and meet tables, top and bottom are derived at
construction by brute force over the order; if the order is not a lattice
the missing entries are ``-1`` and :func:`validate_quantale` says so.
"""

import json

import numpy as np

from .errors import AxiomError, StructuralError
from .report import Report


def _readonly(a):
    a.setflags(write=False)
    return a


class Quantale:
    def __init__(self, elements, leq, tensor, unit, name=None):
        elements = [str(e) for e in elements]
        n = len(elements)
        if n == 0:
            raise StructuralError("a quantale needs at least one element")
        if len(set(elements)) != n:
            raise StructuralError(f"duplicate element names in {elements}")
        leq = _square(leq, n, "order")
        tensor = _square(tensor, n, "tensor")
        if not np.isin(leq, (0, 1)).all():
            raise StructuralError("order matrix entries must be 0 or 1")
        if tensor.min() < 0 or tensor.max() >= n:
            raise StructuralError("tensor table entry out of range")
        unit = int(unit)
        if not 0 <= unit < n:
            raise StructuralError(f"unit index {unit} out of range")
        bad = np.argwhere(tensor != tensor.T)
        if len(bad):
            a, b = (int(v) for v in bad[0])
            raise AxiomError(
                f"tensor is not commutative at ({elements[a]}, {elements[b]}); "
                "only commutative quantales are supported"
            )
        self.name = name
        self.elements = tuple(elements)
        self.n = n
        self.leq_table = _readonly(leq.astype(np.uint8))
        self.tensor_table = _readonly(tensor.astype(np.int32))
        self.unit = unit
        self.join_table = _readonly(_bounds(self.leq_table, upper=True))
        self.meet_table = _readonly(_bounds(self.leq_table, upper=False))
        self.top = _extreme(self.leq_table, top=True)
        self.bottom = _extreme(self.leq_table, top=False)

    def index(self, name):
        try:
            return self.elements.index(str(name))
        except ValueError:
            raise StructuralError(f"{name!r} is not an element of this quantale") from None

    def _check(self, *vs):
        for v in vs:
            if not 0 <= v < self.n:
                raise StructuralError(f"element index {v} out of range")

    def leq(self, a, b):
        self._check(a, b)
        return bool(self.leq_table[a, b])

    def tensor(self, a, b):
        self._check(a, b)
        return int(self.tensor_table[a, b])

    def join(self, values):
        acc = self.bottom
        if acc < 0:
            raise AxiomError("order has no bottom element")
        for v in values:
            self._check(v)
            acc = int(self.join_table[acc, v])
            if acc < 0:
                raise AxiomError("order is not a lattice")
        return acc

    def meet(self, values):
        acc = self.top
        if acc < 0:
            raise AxiomError("order has no top element")
        for v in values:
            self._check(v)
            acc = int(self.meet_table[acc, v])
            if acc < 0:
                raise AxiomError("order is not a lattice")
        return acc

    @property
    def is_pointed(self):
        return self.unit == self.top

    def sorted_values(self):
        """Element indices in stored order; enumeration uses this order."""
        return list(range(self.n))

    def __eq__(self, other):
        if not isinstance(other, Quantale):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.unit == other.unit
            and np.array_equal(self.leq_table, other.leq_table)
            and np.array_equal(self.tensor_table, other.tensor_table)
        )

    def __hash__(self):
        return hash((self.elements, self.unit, self.tensor_table.tobytes()))

    def __repr__(self):
        label = self.name or "Quantale"
        return f"<{label} {list(self.elements)} unit={self.elements[self.unit]}>"

    def to_json(self):
        return {
            "elements": list(self.elements),
            "leq": self.leq_table.astype(int).tolist(),
            "tensor": self.tensor_table.tolist(),
            "unit": self.unit,
        }

    @classmethod
    def from_json(cls, data, name=None):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["elements"], data["leq"], data["tensor"], data["unit"], name=name)


def _square(table, n, what):
    try:
        a = np.array(table, dtype=np.int64)
    except (ValueError, TypeError):
        raise StructuralError(f"{what} table is ragged") from None
    if a.shape != (n, n):
        raise StructuralError(f"{what} table has shape {a.shape}, expected {(n, n)}")
    return a


def _bounds(leq, upper):
    n = leq.shape[0]
    out = np.full((n, n), -1, dtype=np.int32)
    le = leq.astype(bool)
    rel = le if upper else le.T
    for a in range(n):
        for b in range(n):
            cands = np.flatnonzero(rel[a] & rel[b])
            for c in cands:
                if rel[c, cands].all():
                    out[a, b] = c
                    break
    return out


def _extreme(leq, top):
    le = leq.astype(bool)
    for t in range(le.shape[0]):
        if (le[:, t] if top else le[t, :]).all():
            return t
    return -1


def validate_quantale(q):
    """Check every quantale axiom over the finite carrier.

    Distributivity over arbitrary joins is checked as binary-join
    distributivity plus absorption of the bottom element, which is
    equivalent on a finite lattice.
    """
    r = Report(f"quantale {q.name or ''}".strip())
    n = q.n
    le = q.leq_table.astype(bool)
    t = q.tensor_table
    names = q.elements
    idx = range(n)

    w = _first((a,) for a in idx if not le[a, a])
    r.check("order reflexive", w, _lab(names, w))
    w = _first((a, b) for a in idx for b in idx if a != b and le[a, b] and le[b, a])
    r.check("order antisymmetric", w, _lab(names, w))
    w = _first((a, b, c) for a in idx for b in idx for c in idx
               if le[a, b] and le[b, c] and not le[a, c])
    r.check("order transitive", w, _lab(names, w))
    w = _first((a, b) for a in idx for b in idx if q.join_table[a, b] < 0)
    r.check("joins exist", w, _lab(names, w))
    w = _first((a, b) for a in idx for b in idx if q.meet_table[a, b] < 0)
    r.check("meets exist", w, _lab(names, w))
    r.check("top exists", None if q.top >= 0 else ())
    r.check("bottom exists", None if q.bottom >= 0 else ())

    w = _first((a, b, c) for a in idx for b in idx for c in idx
               if t[t[a, b], c] != t[a, t[b, c]])
    r.check("associativity", w, _lab(names, w))
    w = _first((a,) for a in idx if t[q.unit, a] != a)
    r.check("unit law", w, _lab(names, w))
    w = _first((a, b, c, d) for a in idx for b in idx for c in idx for d in idx
               if le[a, b] and le[c, d] and not le[t[a, c], t[b, d]])
    r.check("monotonicity", w, _lab(names, w))

    if r.holds("joins exist") and r.holds("bottom exists"):
        j = q.join_table
        w = _first((a, b, c) for a in idx for b in idx for c in idx
                   if t[a, j[b, c]] != j[t[a, b], t[a, c]])
        r.check("distributivity", w, _lab(names, w))
        w = _first((a,) for a in idx if t[a, q.bottom] != q.bottom)
        r.check("bottom absorption", w, _lab(names, w))
    return r


def _first(gen):
    return next(iter(gen), None)


def _lab(names, w):
    return () if w is None else tuple(names[i] for i in w)


def builtin_two():
    """The two-element quantale ({0, 1}, <=, min, 1)."""
    return Quantale(["0", "1"], [[1, 1], [0, 1]], [[0, 0], [0, 1]], 1, name="Two")


def builtin_chain(n, tensor_kind="meet"):
    """Chain fixtures.

    ``meet``: 0 < 1 < ... < n-1 with tensor min and unit n-1.
    ``truncated_add_reversed``: element i is a cost, ordered by i >= j
    (cost 0 is top), tensor is addition truncated at n-1, unit cost 0.
    """
    if n < 1:
        raise ValueError("chain length must be positive")
    idx = np.arange(n)
    if tensor_kind == "meet":
        leq = idx[:, None] <= idx[None, :]
        tensor = np.minimum(idx[:, None], idx[None, :])
        unit = n - 1
    elif tensor_kind == "truncated_add_reversed":
        leq = idx[:, None] >= idx[None, :]
        tensor = np.minimum(idx[:, None] + idx[None, :], n - 1)
        unit = 0
    else:
        raise ValueError(f"unknown tensor kind {tensor_kind!r}")
    return Quantale([str(i) for i in idx], leq, tensor, unit,
                    name=f"Chain{n}-{tensor_kind}")


def is_pointed(q):
    return q.is_pointed


def join(q, values):
    return q.join(values)


def meet(q, values):
    return q.meet(values)


def leq(q, a, b):
    return q.leq(a, b)


def tensor(q, a, b):
    return q.tensor(a, b)
