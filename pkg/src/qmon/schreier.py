"""Split extensions of V-monoids, enriched actions, and the passage between them.

A split extension X --k--> Z <--s-- --p--> Y is stored as three V-monoids
and three index maps. The normalized form is Z = X x_a Y with k, p, s the
first injection, second projection and second injection.
"""

from dataclasses import dataclass

import numpy as np

from . import config, kernels
from .errors import AxiomError, BudgetExceeded, QmonError, StructuralError
from .monoid import FiniteMonoid, MonoidAction, SemidirectMonoid, hom_witness, validate_action
from .report import Check, Report
from .semidirect import tensor_relation, wlex_relation
from .vcat import VRelation, le_witness, vfunctor_witness
from .vmon import (ConeFunction, VMonoid, cone_of, is_vmon_star, is_vmonoid_bruteforce,
                   relation_from_cone, vmonoid_report)


class SplitExtensionCandidate:
    def __init__(self, X, Z, Y, k, p, s):
        self.X, self.Z, self.Y = X, Z, Y
        self.k = tuple(int(v) for v in k)
        self.p = tuple(int(v) for v in p)
        self.s = tuple(int(v) for v in s)
        if len(self.k) != X.n or len(self.p) != Z.n or len(self.s) != Y.n:
            raise StructuralError("map lengths do not match the carriers")
        if (any(not 0 <= v < Z.n for v in self.k + self.s)
                or any(not 0 <= v < Y.n for v in self.p)):
            raise StructuralError("map value out of range")
        if X.q != Z.q or Z.q != Y.q:
            raise StructuralError("V-monoids over different quantales")

    @property
    def q(self):
        return self.Z.q

    @classmethod
    def normalized(cls, X, Y, action, c):
        """(X, a) -> (X x_a Y, c) <-> (Y, b) with the canonical maps."""
        S = SemidirectMonoid(X.monoid, Y.monoid, action)
        if not isinstance(c, VRelation):
            raise StructuralError("expected a VRelation on the semidirect product")
        Z = VMonoid(S, c, check=False, name=S.name)
        return cls(X, Z, Y, S.iota1(), S.pi2(), S.iota2())

    def relabel(self, perm):
        """Transport Z along the bijection z -> perm[z]."""
        perm = [int(v) for v in perm]
        n = self.Z.n
        if sorted(perm) != list(range(n)):
            raise StructuralError("not a permutation of Z")
        inv = [0] * n
        for z, w in enumerate(perm):
            inv[w] = z
        t = self.Z.monoid.table
        table = [[perm[t[inv[u], inv[v]]] for v in range(n)] for u in range(n)]
        c = self.Z.a
        rel = [[c[inv[u], inv[v]] for v in range(n)] for u in range(n)]
        m = FiniteMonoid(table, perm[self.Z.identity],
                         [self.Z.elements[inv[w]] for w in range(n)], name=self.Z.name)
        Z = VMonoid(m, VRelation(self.q, rel), check=False, name=self.Z.name)
        return SplitExtensionCandidate(self.X, Z, self.Y,
                                       [perm[v] for v in self.k],
                                       [self.p[inv[w]] for w in range(n)],
                                       [perm[v] for v in self.s])


@dataclass
class QSearch:
    q: tuple = None
    missing: tuple = ()
    ambiguous: tuple = ()

    @property
    def unique(self):
        return self.q is not None


def find_q(cand):
    """For each z, every x with z = k(x) * s(p(z)); q exists iff exactly one."""
    t = cand.Z.monoid.table
    q, missing, ambiguous = [], [], []
    for z in range(cand.Z.n):
        tail = cand.s[cand.p[z]]
        xs = [x for x in range(cand.X.n) if t[cand.k[x], tail] == z]
        if not xs:
            missing.append(z)
        elif len(xs) > 1:
            ambiguous.append((z, tuple(xs)))
        else:
            q.append(xs[0])
    if missing or ambiguous:
        return QSearch(None, tuple(missing), tuple(ambiguous))
    return QSearch(tuple(q))


def is_U_schreier_extension(cand):
    """Per-axiom report; in normalized form S1, S2, S3 are the three
    enrichment conditions (projection, kernel relation, section)."""
    X, Z, Y = cand.X, cand.Z, cand.Y
    r = Report("U-Schreier split extension")
    bad = next((i for i, m in enumerate((X, Z, Y))
                if not vmonoid_report(m.monoid, m.relation).ok), None)
    r.check("V-monoids", None if bad is None else (bad,), detail="0 = X, 1 = Z, 2 = Y")
    bad = next(((i,) + w for i, w in enumerate((hom_witness(cand.k, X.monoid, Z.monoid),
                                                hom_witness(cand.p, Z.monoid, Y.monoid),
                                                hom_witness(cand.s, Y.monoid, Z.monoid)))
                if w is not None), None)
    r.check("homomorphisms", bad, detail="0 = k, 1 = p, 2 = s")
    r.check("split", next(((y,) for y in range(Y.n) if cand.p[cand.s[y]] != y), None))
    # witness: an element of Z in the image of k but not over 1, over 1 but
    # missed by k, or hit twice by k
    ker = [z for z in range(Z.n) if cand.p[z] == Y.identity]
    bad = ([z for z in cand.k if z not in ker] + [z for z in ker if z not in cand.k]
           + [z for i, z in enumerate(cand.k) if z in cand.k[:i]])
    r.check("kernel carrier", (bad[0],) if bad else None)
    r.check("S1", vfunctor_witness(cand.p, Z.relation, Y.relation))
    k = np.array(cand.k)
    diff = np.argwhere(Z.a[k[:, None], k[None, :]] != X.a)
    r.check("S2", tuple(int(v) for v in diff[0]) if len(diff) else None)
    r.check("S3", vfunctor_witness(cand.s, Y.relation, Z.relation))
    qs = find_q(cand)
    r.check("Schreier", None if qs.unique else
            ((qs.missing[0],) if qs.missing else qs.ambiguous[0][:1]))
    return r


def prop1_bounds_check(X, Y, action, c):
    """computed: normalized diagram is a U-Schreier extension;
    criterion: a (x) b <= c <= wlex and (X x_a Y, c) is a V-monoid."""
    cand = SplitExtensionCandidate.normalized(X, Y, action, c)
    computed = is_U_schreier_extension(cand).ok
    criterion = (le_witness(tensor_relation(X, Y), c) is None
                 and le_witness(c, wlex_relation(X, Y)) is None
                 and is_vmonoid_bruteforce(cand.Z.monoid, c))
    return Check(computed, criterion)


def _constraint_rows(m):
    """(e1, e2, e3) rows for transitivity and compatibility on carrier m."""
    n = m.n
    t = m.table
    i, j, k = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    trans = np.stack([(i * n + j).ravel(), (j * n + k).ravel(), (i * n + k).ravel()], 1)
    x1, y1, x2, y2 = (g.ravel() for g in np.meshgrid(*(np.arange(n),) * 4, indexing="ij"))
    comp = np.stack([x1 * n + y1, x2 * n + y2, t[x1, x2] * n + t[y1, y2]], 1)
    m2 = np.int64(n * n)
    allrows = np.concatenate([trans, comp]).astype(np.int64)
    key = np.unique((allrows[:, 0] * m2 + allrows[:, 1]) * m2 + allrows[:, 2])
    rows = np.stack([key // (m2 * m2), key // m2 % m2, key % m2], 1)
    owner = rows.max(axis=1)
    order = np.argsort(owner, kind="stable")
    rows, owner = rows[order], owner[order]
    offsets = np.searchsorted(owner, np.arange(n * n + 1))
    return rows, offsets


def interval_choices(q, lo, hi):
    """Per entry, the values v with lo <= v <= hi in stored order."""
    le = q.leq_table.astype(bool)
    out = []
    for l, h in zip(lo.matrix.ravel(), hi.matrix.ravel()):
        out.append([v for v in range(q.n) if le[l, v] and le[v, h]])
    return out


def enumerate_enrichments(X, Y, action, budget=None, verify=True):
    """Every c in [a (x) b, wlex] making (X x_a Y, c) a V-monoid, row-major
    lexicographic in stored value order. These are exactly the enrichments
    giving a U-Schreier split extension."""
    q = X.q
    if not q.is_pointed:
        raise AxiomError("enumeration assumes a pointed quantale (unit = top)")
    if X.n > config.MAX_ELEMENTS or Y.n > config.MAX_ELEMENTS:
        raise StructuralError("carrier exceeds the configured element cap")
    budget = config.ENUMERATION_BUDGET if budget is None else budget
    S = SemidirectMonoid(X.monoid, Y.monoid, action)
    lo, hi = tensor_relation(X, Y), wlex_relation(X, Y)
    choices = interval_choices(q, lo, hi)
    n = S.n
    for z in range(n):
        e = z * n + z
        choices[e] = [v for v in choices[e] if q.leq_table[q.unit, v]]
    card = 1
    for c in choices:
        card *= len(c)
    if card > budget:
        raise BudgetExceeded(card, budget)
    if card == 0:
        return []
    width = max(len(c) for c in choices)
    ch = np.zeros((n * n, width), dtype=np.int32)
    for e, c in enumerate(choices):
        ch[e, :len(c)] = c
    rows, offsets = _constraint_rows(S)
    found = kernels.search_relations(ch, [len(c) for c in choices], rows, offsets,
                                     q.tensor_table, q.leq_table)
    out = [VRelation(q, np.array(v, dtype=np.int32).reshape(n, n)) for v in found]
    if verify:
        for c in out:
            cand = SplitExtensionCandidate.normalized(X, Y, action, c)
            if not is_U_schreier_extension(cand).ok:
                raise QmonError("enumerated enrichment fails the extension check")
    return out


class EnrichedAction:
    """A monoid action together with P: X x Y -> V, ``P[x, y]``."""

    def __init__(self, action, P, q):
        m = np.array(P, dtype=np.int64)
        if m.shape != (action.acted.n, action.acting.n):
            raise StructuralError(f"P has shape {m.shape}, expected "
                                  f"{(action.acted.n, action.acting.n)}")
        if m.min() < 0 or m.max() >= q.n:
            raise StructuralError("P value is not a quantale element")
        m = m.astype(np.int32)
        m.setflags(write=False)
        self.action = action
        self.P = m
        self.q = q

    def __eq__(self, other):
        if not isinstance(other, EnrichedAction):
            return NotImplemented
        return self.action == other.action and np.array_equal(self.P, other.P)

    def __hash__(self):
        return hash((self.action, self.P.tobytes()))

    def __repr__(self):
        return f"<EnrichedAction alpha={self.action.table.tolist()} P={self.P.tolist()}>"


def check_enriched_action(X, Y, ea):
    """E0-E4 with witnesses; pairs in E3/E4 witnesses are ((x, y), (x', y'))."""
    q = X.q
    le = q.leq_table
    P = ea.P
    Pa = X.a[X.identity]
    Pb = Y.a[Y.identity]
    r = Report("enriched action")
    bad = np.argwhere(le[P, Pb[None, :]] == 0)
    r.check("E0", tuple(int(v) for v in bad[0]) if len(bad) else None)
    bad = np.flatnonzero(le[Pb, P[X.identity]] == 0)
    r.check("E1", (int(bad[0]),) if len(bad) else None)
    bad = np.flatnonzero(P[:, Y.identity] != Pa)
    r.check("E2", (int(bad[0]),) if len(bad) else None)
    if ea.action.acting != Y.monoid or ea.action.acted != X.monoid:
        raise StructuralError("action does not match the given monoids")
    S = ea.action.semidirect()
    flat = P.reshape(-1)
    w = kernels.m2_witness(S.table, flat, q.tensor_table, le)
    r.check("E3", None if w is None else tuple(S.split(z) for z in w))
    w = kernels.m3_witness(S.table, flat, q.join_table, le, q.bottom)
    r.check("E4", None if w is None else tuple(S.split(z) for z in w))
    return r


def action_from_extension(cand):
    """(alpha, enriched action) from a U-Schreier extension; the enriched
    action is None when Z is not determined by its cone."""
    r = is_U_schreier_extension(cand)
    if not r.ok:
        raise AxiomError("not a U-Schreier split extension", r)
    q = find_q(cand).q
    t = cand.Z.monoid.table
    X, Y = cand.X, cand.Y
    table = [[q[t[cand.s[y], cand.k[x]]] for x in range(X.n)] for y in range(Y.n)]
    alpha = MonoidAction(Y.monoid, X.monoid, table)
    if not validate_action(alpha).ok:
        raise QmonError("recovered action fails the action laws")
    if not is_vmon_star(cand.Z):
        return alpha, None
    Pc = cand.Z.a[cand.Z.identity]
    P = [[Pc[t[cand.k[x], cand.s[y]]] for y in range(Y.n)] for x in range(X.n)]
    return alpha, EnrichedAction(alpha, P, X.q)


def extension_from_action(X, Y, ea):
    """Normalized extension (X x_a Y, a_P) built from the cone P."""
    for name, m in (("X", X), ("Y", Y)):
        if not is_vmon_star(m):
            raise AxiomError(f"{name} is not determined by its cone")
    r = validate_action(ea.action)
    if not r.ok:
        raise AxiomError("not a monoid action", r)
    r = check_enriched_action(X, Y, ea)
    if not r.ok:
        raise AxiomError("enriched action axioms fail: "
                         + ", ".join(a for a, ok in r.verdicts().items() if not ok), r)
    S = SemidirectMonoid(X.monoid, Y.monoid, ea.action)
    c = relation_from_cone(S, ConeFunction(X.q, ea.P.reshape(-1)))
    return SplitExtensionCandidate.normalized(X, Y, ea.action, c)


def _phi_psi(cand):
    qmap = find_q(cand).q
    t = cand.Z.monoid.table
    ny = cand.Y.n
    phi = [int(t[cand.k[x], cand.s[y]]) for x in range(cand.X.n) for y in range(ny)]
    psi = [qmap[z] * ny + cand.p[z] for z in range(cand.Z.n)]
    return phi, psi


def roundtrip_check(X, Y, ea):
    """Action -> extension -> action must return the same pair."""
    r = Report("action round trip")
    ext = extension_from_action(X, Y, ea)
    er = is_U_schreier_extension(ext)
    r.check("extension is U-Schreier", None if er.ok else (0,))
    r.check("extension determined by its cone", None if is_vmon_star(ext.Z) else (0,))
    if not er.ok:
        return r
    alpha, back = action_from_extension(ext)
    diff = np.argwhere(alpha.table != ea.action.table)
    r.check("action recovered", tuple(int(v) for v in diff[0]) if len(diff) else None)
    if back is None:
        r.check("cone recovered", (-1,))
    else:
        diff = np.argwhere(back.P != ea.P)
        r.check("cone recovered", tuple(int(v) for v in diff[0]) if len(diff) else None)
    lo = le_witness(tensor_relation(X, Y), ext.Z.relation)
    hi = le_witness(ext.Z.relation, wlex_relation(X, Y))
    r.check("between tensor and wlex", lo if lo is not None else hi)
    return r


def extension_roundtrip_check(cand):
    """Extension -> action -> extension: the rebuilt normalized extension
    must match cand after transport along phi, with phi and psi mutually
    inverse isomorphisms of V-monoids."""
    r = Report("extension round trip")
    alpha, ea = action_from_extension(cand)
    if ea is None:
        raise AxiomError("middle V-monoid is not determined by its cone")
    ext = extension_from_action(cand.X, cand.Y, ea)
    S, Z = ext.Z, cand.Z
    phi, psi = _phi_psi(cand)
    r.check("psi after phi", next(((u,) for u in range(S.n) if psi[phi[u]] != u), None))
    r.check("phi after psi", next(((z,) for z in range(Z.n) if phi[psi[z]] != z), None))
    r.check("phi homomorphism", hom_witness(phi, S.monoid, Z.monoid))
    r.check("psi homomorphism", hom_witness(psi, Z.monoid, S.monoid))
    r.check("phi V-functor", vfunctor_witness(phi, S.relation, Z.relation))
    r.check("psi V-functor", vfunctor_witness(psi, Z.relation, S.relation))
    p = np.array(phi)
    diff = np.argwhere(Z.a[p[:, None], p[None, :]] != S.a)
    r.check("normalized relation equal", tuple(int(v) for v in diff[0]) if len(diff) else None)
    return r


def cone_of_extension(cand):
    return cone_of(cand.Z)
