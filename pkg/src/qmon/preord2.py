"""Preordered monoids: the two-element quantale case.

Cones are plain Python sets of element indices and the subset-valued
axioms (B, A) are evaluated with set operations, independently of the
quantale-valued kernels used for the general case.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import AxiomError, StructuralError
from .monoid import (FiniteMonoid, SemidirectMonoid, hom_witness, is_group,
                     is_submonoid, right_normal_witness, saturating_monoid,
                     trivial_action, cyclic_group)
from .quantale import builtin_two
from .report import Report
from .schreier import (EnrichedAction, SplitExtensionCandidate, check_enriched_action,
                       find_q, is_U_schreier_extension)
from .semidirect import lemma3_wlex_transitive, lex_relation, wlex_relation
from .vcat import VRelation, two_relation
from .vmon import VMonoid, is_vmonoid_bruteforce, vmonoid_report


class PreorderedMonoid(VMonoid):
    """A monoid with a compatible preorder, stored as a 0/1 matrix over Two."""

    def __init__(self, monoid, matrix, check=True, name=None):
        super().__init__(monoid, two_relation(matrix), check=check, name=name)

    @cached_property
    def positive(self):
        return frozenset(int(x) for x in np.flatnonzero(self.a[self.identity]))

    def leq(self, x, y):
        return bool(self.a[x, y])


def cone_to_preorder(m, P):
    """x <= y iff y in P + x."""
    P = set(int(v) for v in P)
    n = m.n
    out = np.zeros((n, n), dtype=np.int32)
    for x in range(n):
        for w in P:
            out[x, m.table[w, x]] = 1
    return out


def preorder_to_cone(m, matrix):
    matrix = np.asarray(matrix.matrix if isinstance(matrix, VRelation) else matrix)
    return frozenset(int(x) for x in np.flatnonzero(matrix[m.identity]))


def in_two_mon_star(pm):
    return np.array_equal(cone_to_preorder(pm.monoid, pm.positive), pm.a)


def cone_axioms_two(m, P):
    """M1, M2, M3 read as sets: contains 0, closed, right normal."""
    P = set(int(v) for v in P)
    r = Report("cone (sets)")
    r.check("M1", None if m.identity in P else (m.identity,))
    r.check("M2", next(((x, y) for x in sorted(P) for y in sorted(P)
                        if m.table[x, y] not in P), None))
    r.check("M3", right_normal_witness(m, P))
    return r


class TwoEnrichedAction:
    """An action together with a subset P of X x Y, as (x, y) pairs."""

    def __init__(self, action, pairs):
        nx, ny = action.acted.n, action.acting.n
        pairs = frozenset((int(x), int(y)) for x, y in pairs)
        if any(not (0 <= x < nx and 0 <= y < ny) for x, y in pairs):
            raise StructuralError("pair outside X x Y")
        self.action = action
        self.pairs = pairs

    def __eq__(self, other):
        if not isinstance(other, TwoEnrichedAction):
            return NotImplemented
        return self.action == other.action and self.pairs == other.pairs

    def __hash__(self):
        return hash((self.action, self.pairs))

    def indicator(self, q=None):
        q = q or builtin_two()
        nx, ny = self.action.acted.n, self.action.acting.n
        P = np.full((nx, ny), q.bottom, dtype=np.int32)
        for x, y in self.pairs:
            P[x, y] = q.top
        return EnrichedAction(self.action, P, q)


def check_B_axioms(X, Y, action, P):
    """Domain condition and B0-B4 for a subset P of X x Y."""
    P = P.pairs if isinstance(P, TwoEnrichedAction) else frozenset(P)
    PX, PY = X.positive, Y.positive
    one, zero = Y.identity, X.identity
    xt, yt, al = X.monoid.table, Y.monoid.table, action.table
    r = Report("2-enriched action")
    r.check("domain", next(((x, y) for x, y in sorted(P) if y not in PY), None))
    r.check("B0", next(((x, y) for x, y in sorted(P) if y == one and x not in PX), None))
    r.check("B1", next(((zero, y) for y in sorted(PY) if (zero, y) not in P), None))
    r.check("B2", next(((x, one) for x in sorted(PX) if (x, one) not in P), None))
    # products of pairs, computed from the component tables
    ny = Y.n
    xs, ys = np.divmod(np.arange(X.n * ny), ny)
    prod = xt[xs[:, None], al[ys[:, None], xs[None, :]]] * ny + yt[ys[:, None], ys[None, :]]
    inside = np.zeros(X.n * ny, dtype=bool)
    inside[[x * ny + y for x, y in P]] = True
    members = np.flatnonzero(inside)

    def pair(u):
        return divmod(int(u), ny)

    bad = np.argwhere(~inside[prod[np.ix_(members, members)]])
    r.check("B3", tuple(pair(members[i]) for i in bad[0]) if len(bad) else None)
    # B4: (x0, y0)(x, y) must lie in P (x0, y0) for every (x, y) in P
    reach = np.zeros((X.n * ny, X.n * ny), dtype=bool)
    reach[np.arange(X.n * ny)[:, None], prod[members].T] = True
    bad = np.argwhere(~reach[np.arange(X.n * ny)[None, :], prod.T[members]])
    r.check("B4", (pair(members[bad[0][0]]), pair(bad[0][1])) if len(bad) else None)
    return r


# which B-side verdicts make up each E axiom
E_TO_B = {"E0": ("domain",), "E1": ("B1",), "E2": ("B0", "B2"), "E3": ("B3",), "E4": ("B4",)}


def b_axioms_equal_e_axioms(X, Y, action, P):
    """Evaluate E0-E4 on the indicator of P and the set-level axioms; True iff
    every E verdict equals the conjunction of its B counterparts."""
    if not isinstance(P, TwoEnrichedAction):
        P = TwoEnrichedAction(action, P)
    e = check_enriched_action(X, Y, P.indicator(X.q)).verdicts()
    b = check_B_axioms(X, Y, action, P).verdicts()
    return all(e[k] == all(b[v] for v in vs) for k, vs in E_TO_B.items())


class PreorderedAction:
    """An action with xi: X x P_Y -> X, stored as an |X| x |Y| array with -1
    in the columns of non-positive y."""

    def __init__(self, action, xi, positive_y):
        xi = np.array(xi, dtype=np.int64)
        nx, ny = action.acted.n, action.acting.n
        if xi.shape != (nx, ny):
            raise StructuralError(f"xi has shape {xi.shape}, expected {(nx, ny)}")
        cols = sorted(positive_y)
        if any(xi[x, y] < 0 or xi[x, y] >= nx for x in range(nx) for y in cols):
            raise StructuralError("xi must be defined on X x P_Y with values in X")
        mask = np.ones(ny, dtype=bool)
        mask[cols] = False
        xi[:, mask] = -1
        self.action = action
        self.xi = xi.astype(np.int32)
        self.positive_y = frozenset(cols)

    def fixed(self):
        return frozenset((x, y) for x in range(self.xi.shape[0])
                         for y in self.positive_y if self.xi[x, y] == x)


def check_A_axioms(X, Y, pa):
    """A1-A4. A4 is required for pairs fixed by xi, mirroring B4; read for
    every pair of X x P_Y it would force xi to be the first projection."""
    xi, PY, PX = pa.xi, sorted(pa.positive_y), X.positive
    xt, yt, al = X.monoid.table, Y.monoid.table, pa.action.table
    zero, one = X.identity, Y.identity
    fix = pa.fixed()
    r = Report("preordered action")
    r.check("A1", next(((zero, y) for y in PY if xi[zero, y] != zero), None))
    r.check("A2", next(((x, one) for x in sorted(PX) if xi[x, one] != x), None))
    w = None
    for x, y in sorted(fix):
        for x2, y2 in sorted(fix):
            u, v = int(xt[x, al[y, x2]]), int(yt[y, y2])
            if v not in pa.positive_y or xi[u, v] != u:
                w = ((x, y), (x2, y2))
                break
        if w:
            break
    r.check("A3", w)
    w = None
    for x, y in sorted(fix):
        for x0 in range(X.n):
            for y0 in range(Y.n):
                lhs = xt[x0, al[y0, x]]
                if not any(xt[x2, al[y2, x0]] == lhs and yt[y0, y] == yt[y2, y0]
                           for x2, y2 in fix):
                    w = ((x, y), (x0, y0))
                    break
            if w:
                break
        if w:
            break
    r.check("A4", w)
    return r


def check_A0(X, Y, pa):
    """xi(x, 1) = x implies x is positive."""
    one = Y.identity
    return all(x in X.positive for x in range(X.n) if pa.xi[x, one] == x)


def xi_from_subset(X, Y, ea):
    """xi(x, y) = x on P, 0 elsewhere on X x P_Y."""
    P = ea.pairs
    xi = np.zeros((X.n, Y.n), dtype=np.int32)
    for x in range(X.n):
        for y in range(Y.n):
            xi[x, y] = x if (x, y) in P else X.identity
    return PreorderedAction(ea.action, xi, Y.positive)


def subset_from_xi(X, Y, pa):
    r = check_A_axioms(X, Y, pa)
    if not r.ok:
        raise AxiomError("not a preordered action", r)
    if not check_A0(X, Y, pa):
        raise AxiomError("xi fixes some (x, 1) with x not positive; "
                         "the correspondence with subsets needs this excluded")
    return TwoEnrichedAction(pa.action, pa.fixed())


@dataclass
class RNMonoDiagram:
    """Monoids X, Z, Y with cones and maps k, p, s between them."""

    X: FiniteMonoid
    Z: FiniteMonoid
    Y: FiniteMonoid
    PX: frozenset
    PZ: frozenset
    PY: frozenset
    k: tuple
    p: tuple
    s: tuple


def rnmono_schreier_check(d):
    r = Report("right-normal Schreier diagram")
    for name, m, P in (("X", d.X, d.PX), ("Z", d.Z, d.PZ), ("Y", d.Y, d.PY)):
        ok_sub = is_submonoid(m, P)
        r.check(f"P{name} submonoid", None if ok_sub else (name,))
        r.check(f"P{name} right normal", right_normal_witness(m, P) if ok_sub else None)
        pre = cone_to_preorder(m, P)
        good = (vmonoid_report(m, two_relation(pre)).ok
                and preorder_to_cone(m, pre) == frozenset(P))
        r.check(f"P{name} cone-determined", None if good else (name,))
    for name, w in (("k", hom_witness(d.k, d.X, d.Z)), ("p", hom_witness(d.p, d.Z, d.Y)),
                    ("s", hom_witness(d.s, d.Y, d.Z))):
        r.check(f"{name} homomorphism", w)
    r.check("split", next(((y,) for y in range(d.Y.n) if d.p[d.s[y]] != y), None))
    ker = sorted(z for z in range(d.Z.n) if d.p[z] == d.Y.identity)
    r.check("kernel carrier", None if sorted(d.k) == ker and len(set(d.k)) == d.X.n
            else (0,))
    q = builtin_two()
    chaos = lambda m: VMonoid(m, VRelation(q, np.ones((m.n, m.n))), check=False)
    cand = SplitExtensionCandidate(chaos(d.X), chaos(d.Z), chaos(d.Y), d.k, d.p, d.s)
    qs = find_q(cand)
    r.check("Schreier", None if qs.unique else
            ((qs.missing[0],) if qs.missing else qs.ambiguous[0][:1]))
    for name, f, src, tgt in (("k", d.k, d.PX, d.PZ), ("p", d.p, d.PZ, d.PY),
                              ("s", d.s, d.PY, d.PZ)):
        r.check(f"{name} restricts to cones",
                next(((x,) for x in sorted(src) if f[x] not in tgt), None))
    return r


def diagram_from_action(X, Y, ea):
    """The semidirect diagram whose middle cone is P (pairs flattened)."""
    S = SemidirectMonoid(X.monoid, Y.monoid, ea.action)
    PZ = frozenset(S.pair(x, y) for x, y in ea.pairs)
    return RNMonoDiagram(X.monoid, S, Y.monoid, X.positive, PZ, Y.positive,
                         S.iota1(), S.pi2(), S.iota2())


# worked examples

@dataclass
class Claim:
    name: str
    holds: bool
    witness: object = None
    detail: str = ""

    def to_dict(self):
        d = {"claim": self.name, "holds": bool(self.holds)}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class Demo:
    title: str
    claims: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.holds for c in self.claims)

    def to_dict(self):
        return {"demo": self.title, "ok": self.ok, "claims": [c.to_dict() for c in self.claims]}

    def __str__(self):
        lines = [self.title]
        for c in self.claims:
            line = f"  [{'ok' if c.holds else 'FAIL'}] {c.name}"
            if c.witness is not None:
                line += f"  witness {c.witness}"
            if c.detail:
                line += f"  ({c.detail})"
            lines.append(line)
        return "\n".join(lines)


def naturals(K):
    """{0..K} under saturating addition with the usual order."""
    i = np.arange(K + 1)
    return PreorderedMonoid(saturating_monoid(K), (i[:, None] <= i[None, :]).astype(int),
                            check=False, name=f"N<={K}")


def dotted_naturals(K):
    """{0..K} under saturating addition; 0 below everything, nonzero all equivalent."""
    i = np.arange(K + 1)
    m = (i[:, None] == 0) | (i[None, :] != 0)
    return PreorderedMonoid(saturating_monoid(K), m.astype(int), check=False,
                            name=f"Ndot<={K}")


def example_N_Ndot(K=4):
    if K < 3:
        raise ValueError("K must be at least 3 so that (2, 2) and (1, 2) exist")
    N, D = naturals(K), dotted_naturals(K)
    alpha = trivial_action(D.monoid, N.monoid)
    S = SemidirectMonoid(N.monoid, D.monoid, alpha)
    demo = Demo(f"N x Ndot truncated at {K}")
    okN = vmonoid_report(N.monoid, N.relation).ok
    okD = vmonoid_report(D.monoid, D.relation).ok
    demo.claims.append(Claim("both factors are preordered monoids", okN and okD))
    chk = lemma3_wlex_transitive(N, D)
    demo.claims.append(Claim("wlex is transitive (criterion and direct check agree)",
                             chk.computed and chk.criterion, detail=str(chk.to_dict())))
    wl, lx = wlex_relation(N, D), lex_relation(N, D)
    u, v = S.pair(2, 2), S.pair(1, 2)
    demo.claims.append(Claim("(2,2) below (1,2) in wlex but not in lex",
                             wl(u, v) == 1 and lx(u, v) == 0 and wl != lx,
                             witness=[[2, 2], [1, 2]],
                             detail=f"wlex={wl(u, v)} lex={lx(u, v)}"))
    demo.claims.append(Claim("(N x Ndot, wlex) is a preordered monoid",
                             is_vmonoid_bruteforce(S, wl)))
    bad = None
    for z1 in range(S.n):
        for z2 in range(S.n):
            (m, n), (m2, n2) = S.split(z1), S.split(z2)
            closed = (n == 0 and n2 == 0 and m <= m2) or n2 != 0
            if closed != bool(wl(z1, z2)):
                bad = [[m, n], [m2, n2]]
                break
        if bad:
            break
    demo.claims.append(Claim("closed form of wlex holds entrywise", bad is None, witness=bad))
    return demo


def projection_preorder(X, Y, action):
    """(x, y) below (x', y') iff y <= y'."""
    S = SemidirectMonoid(X.monoid, Y.monoid, action)
    ys = np.array([S.split(z)[1] for z in range(S.n)])
    return S, two_relation(Y.a[ys[:, None], ys[None, :]])


def example_projection_preorder(X=None, Y=None, action=None):
    if X is None:
        Z2 = cyclic_group(2)
        X = PreorderedMonoid(Z2, np.eye(2, dtype=int), name="Z2")
        Y = PreorderedMonoid(Z2, np.eye(2, dtype=int), name="Z2")
        action = trivial_action(Z2, Z2)
    if not (is_group(X.monoid) and is_group(Y.monoid)):
        raise AxiomError("the projection preorder example needs preordered groups")
    S, c = projection_preorder(X, Y, action)
    demo = Demo("projection preorder on a semidirect product of groups")
    demo.claims.append(Claim("semidirect product with projection preorder is a preordered group",
                             is_group(S) and is_vmonoid_bruteforce(S, c)))
    PZ = preorder_to_cone(S, c)
    d = RNMonoDiagram(X.monoid, S, Y.monoid, X.positive, PZ, Y.positive,
                      S.iota1(), S.pi2(), S.iota2())
    rn = rnmono_schreier_check(d)
    demo.claims.append(Claim("right-normal Schreier diagram check passes", rn.ok,
                             witness=None if rn.ok else [v.to_dict() for v in rn.violations]))
    cand = SplitExtensionCandidate.normalized(X, Y, action, c)
    rep = is_U_schreier_extension(cand)
    chaotic = bool(X.a.all())
    w = rep.witness("S2")
    demo.claims.append(Claim(
        "kernel relation fails exactly when the preorder on X is not chaotic",
        rep.holds("S2") == chaotic,
        witness=None if w is None else [list(S.split(S.iota1()[w[0]])),
                                        list(S.split(S.iota1()[w[1]]))],
        detail="(x,1) below (x',1) while x not below x'" if w is not None else ""))
    return demo
