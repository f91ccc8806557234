"""V-monoids, their morphisms and kernels, and cone-determined structures."""

import numpy as np

from . import kernels
from .errors import AxiomError, StructuralError
from .monoid import FiniteMonoid, hom_witness, validate_monoid
from .report import Report
from .vcat import VRelation, reflexivity_witness, transitivity_witness, vfunctor_witness


def _relation(m, a):
    if isinstance(a, VRelation):
        rel = a
    else:
        raise StructuralError("expected a VRelation")
    if rel.shape != (m.n, m.n):
        raise StructuralError(f"relation shape {rel.shape} does not match monoid order {m.n}")
    return rel


def vmonoid_report(m, a, via="bruteforce"):
    """Report on (m, a) being a V-monoid.

    ``via="bruteforce"`` checks a(x1,y1) (x) a(x2,y2) <= a(x1+x2, y1+y2);
    ``via="translations"`` checks both one-sided translation inequalities.
    """
    a = _relation(m, a)
    q = a.q
    r = Report("V-monoid")
    r.check("reflexivity", reflexivity_witness(a))
    r.check("transitivity", transitivity_witness(a))
    if via == "bruteforce":
        r.check("operation is a V-functor",
                kernels.compatible_witness(a.matrix, m.table, q.tensor_table, q.leq_table))
    elif via == "translations":
        r.check("translation invariance",
                kernels.translation_witness(a.matrix, m.table, q.leq_table))
    else:
        raise ValueError(f"unknown method {via!r}")
    return r


def is_vmonoid_bruteforce(m, a):
    return vmonoid_report(m, a, "bruteforce").ok


def is_vmonoid_via_translations(m, a):
    return vmonoid_report(m, a, "translations").ok


class VMonoid:
    def __init__(self, monoid, relation, check=True, name=None):
        relation = _relation(monoid, relation)
        self.monoid = monoid
        self.relation = relation
        self.name = name or monoid.name
        if check:
            r = validate_monoid(monoid)
            if not r.ok:
                raise AxiomError("underlying table is not a monoid", r)
            r = vmonoid_report(monoid, relation)
            if not r.ok:
                raise AxiomError("not a V-monoid", r)

    @property
    def q(self):
        return self.relation.q

    @property
    def a(self):
        return self.relation.matrix

    @property
    def n(self):
        return self.monoid.n

    @property
    def identity(self):
        return self.monoid.identity

    @property
    def elements(self):
        return self.monoid.elements

    def __eq__(self, other):
        if not isinstance(other, VMonoid):
            return NotImplemented
        return self.monoid == other.monoid and self.relation == other.relation

    def __hash__(self):
        return hash((self.monoid, self.relation))

    def __repr__(self):
        return f"<VMonoid {self.name} a={self.a.tolist()}>"


def morphism_report(fmap, source, target):
    r = Report("V-monoid morphism")
    r.check("monoid homomorphism", hom_witness(fmap, source.monoid, target.monoid))
    r.check("V-functor", vfunctor_witness(fmap, source.relation, target.relation))
    return r


class VMonoidMorphism:
    def __init__(self, source, target, fmap, check=True):
        self.source = source
        self.target = target
        self.fmap = tuple(int(v) for v in fmap)
        if check:
            r = morphism_report(self.fmap, source, target)
            if not r.ok:
                raise AxiomError("not a morphism of V-monoids", r)

    def __call__(self, x):
        return self.fmap[x]


def kernel(h):
    """Kernel of a V-monoid morphism: preimage of the identity, restricted relation.

    Returns ``(kernel_vmonoid, embedding)``; the kernel carrier is re-indexed
    densely in increasing order and ``embedding[i]`` is its source element.
    Needs k = top so the category of V-monoids is pointed.
    """
    if not h.source.q.is_pointed:
        raise AxiomError("kernels need a pointed quantale (unit = top)")
    one = h.target.identity
    emb = tuple(x for x in range(h.source.n) if h.fmap[x] == one)
    pos = {x: i for i, x in enumerate(emb)}
    t = h.source.monoid.table
    table = [[pos[int(t[a, b])] for b in emb] for a in emb]
    m = FiniteMonoid(table, pos[h.source.identity],
                     [h.source.elements[x] for x in emb],
                     name=f"ker {h.source.name or ''}".strip())
    idx = np.array(emb)
    rel = VRelation(h.source.q, h.source.a[idx[:, None], idx[None, :]])
    return VMonoid(m, rel, check=False), emb


class ConeFunction:
    """A map P: X -> V stored as element indices."""

    def __init__(self, q, values):
        v = np.array(values, dtype=np.int64).reshape(-1)
        if v.size and (v.min() < 0 or v.max() >= q.n):
            raise StructuralError("cone value is not a quantale element")
        v = v.astype(np.int32)
        v.setflags(write=False)
        self.q = q
        self.values = v

    @property
    def n(self):
        return len(self.values)

    def __call__(self, x):
        return int(self.values[x])

    def __eq__(self, other):
        if not isinstance(other, ConeFunction):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())

    def __repr__(self):
        return f"<ConeFunction {self.values.tolist()}>"

    @classmethod
    def indicator(cls, q, n, subset):
        v = np.full(n, q.bottom, dtype=np.int32)
        for x in subset:
            v[x] = q.top
        return cls(q, v)


def cone_of(vm):
    """P_a(x) = a(0, x)."""
    return ConeFunction(vm.q, vm.a[vm.identity, :])


def relation_from_cone(m, P):
    """a_P(x, y) = join of P(w) over w with y = w + x (empty join is bottom)."""
    if P.n != m.n:
        raise StructuralError("cone length does not match monoid order")
    q = P.q
    return VRelation(q, kernels.cone_relation(m.table, P.values, q.join_table, q.bottom))


def check_M_axioms(m, P):
    q = P.q
    r = Report("cone axioms")
    r.check("M1", None if q.leq_table[q.unit, P(m.identity)] else (m.identity,))
    r.check("M2", kernels.m2_witness(m.table, P.values, q.tensor_table, q.leq_table))
    r.check("M3", kernels.m3_witness(m.table, P.values, q.join_table, q.leq_table, q.bottom))
    return r


def verify_prop4(m, P):
    """Evaluate both sides of each cone/relation equivalence; any
    violation recorded here is a mismatch between the two sides."""
    M = check_M_axioms(m, P)
    a = relation_from_cone(m, P)
    q = P.q
    refl = reflexivity_witness(a) is None
    trans = transitivity_witness(a) is None
    r = Report("cone relation equivalences")
    r.check("reflexive iff M1",
            None if refl == M.holds("M1") else (int(refl), int(M.holds("M1"))))
    r.check("transitive iff M2",
            None if trans == M.holds("M2") else (int(trans), int(M.holds("M2"))))
    if refl and trans:
        op_ok = kernels.compatible_witness(a.matrix, m.table, q.tensor_table,
                                           q.leq_table) is None
        r.check("operation V-functor iff M3",
                None if op_ok == M.holds("M3") else (int(op_ok), int(M.holds("M3"))))
    return r


def is_vmon_star(vm):
    return relation_from_cone(vm.monoid, cone_of(vm)) == vm.relation


def vmonoid_from_cone(m, P, name=None, check=True):
    return VMonoid(m, relation_from_cone(m, P), check=check, name=name)
