"""Candidate V-relations on X x_a Y and when they give a V-monoid.

Every ``Check`` returned here pairs a direct computation (``computed``,
always the four-index V-monoid test or a direct transitivity/equality test)
with the characterising condition (``criterion``) evaluated from the
factor data alone. The two sides share no code, so agreement is evidence.

Pairs are flattened as x * |Y| + y throughout, matching
:class:`~qmon.monoid.SemidirectMonoid`.
"""

import numpy as np

from .errors import AxiomError, StructuralError
from .monoid import SemidirectMonoid, is_group
from .report import Check
from .vcat import VRelation, is_transitive, is_vfunctor, tensor_vcat, vfunctor_witness
from .vmon import VMonoid, is_vmonoid_bruteforce


def _parts(a, b, y_unit=None):
    """Accept V-monoids, or bare relations with the identity of Y given."""
    if isinstance(b, VMonoid):
        unit = b.identity if y_unit is None else y_unit
    else:
        unit = 0 if y_unit is None else y_unit
    a = a.relation if isinstance(a, VMonoid) else a
    b = b.relation if isinstance(b, VMonoid) else b
    if a.q != b.q:
        raise StructuralError("relations over different quantales")
    return a, b, int(unit)


def _require_pointed(q):
    if not q.is_pointed:
        raise AxiomError("this construction assumes a pointed quantale (unit = top)")


def _grid(nx, ny):
    xs = np.repeat(np.arange(nx), ny)
    ys = np.tile(np.arange(ny), nx)
    return xs, ys


def tensor_relation(a, b):
    a, b, _ = _parts(a, b)
    return tensor_vcat(a, b)


def _lexlike(a, b, unit, weak):
    xs, ys = _grid(a.n, b.n)
    A = a.matrix[xs[:, None], xs[None, :]]
    B = b.matrix[ys[:, None], ys[None, :]]
    if weak:
        use_a = (ys[:, None] == unit) & (ys[None, :] == unit)
    else:
        use_a = ys[:, None] == ys[None, :]
    return VRelation(a.q, np.where(use_a, A, B))


def lex_relation(a, b, y_unit=None):
    """a(x, x') when y = y', else b(y, y')."""
    a, b, unit = _parts(a, b, y_unit)
    return _lexlike(a, b, unit, weak=False)


def wlex_relation(a, b, y_unit=None):
    """a(x, x') when y = y' = 1, else b(y, y')."""
    a, b, unit = _parts(a, b, y_unit)
    return _lexlike(a, b, unit, weak=True)


def pullback_meet(a, b, y_unit=None):
    """(a meet b)((x, y), (x', y')) = a(x, x') meet b(y, y')."""
    a, b, _ = _parts(a, b, y_unit)
    xs, ys = _grid(a.n, b.n)
    A = a.matrix[xs[:, None], xs[None, :]]
    B = b.matrix[ys[:, None], ys[None, :]]
    return VRelation(a.q, a.q.meet_table[A, B])


def _below_all(q, v, values):
    """v <= w for every w in values."""
    return bool(q.leq_table[v, np.asarray(values).reshape(-1)].all())


def lemma1_lex_eq_wlex(a, b, y_unit=None):
    """computed: lex = wlex; criterion: Y has one element or a is constantly the unit."""
    a, b, unit = _parts(a, b, y_unit)
    _require_pointed(a.q)
    computed = _lexlike(a, b, unit, False) == _lexlike(a, b, unit, True)
    criterion = b.n == 1 or bool((a.matrix == a.q.unit).all())
    return Check(computed, criterion)


def _lemma3_criterion(a, b, unit):
    q = a.q
    t = q.tensor_table
    return all(_below_all(q, t[b.matrix[unit, y], b.matrix[y, unit]], a.matrix)
               for y in range(b.n) if y != unit)


def _lemma4_criterion(a, b):
    q = a.q
    t = q.tensor_table
    return all(_below_all(q, t[b.matrix[y, y2], b.matrix[y2, y]], a.matrix)
               for y in range(b.n) for y2 in range(b.n) if y != y2)


def lemma3_wlex_transitive(a, b, y_unit=None):
    """computed: wlex is transitive; criterion: b(1, y) (x) b(y, 1) lies below
    every entry of a for each y != 1."""
    a, b, unit = _parts(a, b, y_unit)
    _require_pointed(a.q)
    return Check(is_transitive(_lexlike(a, b, unit, True)), _lemma3_criterion(a, b, unit))


def lemma4_lex_transitive(a, b, y_unit=None):
    """computed: lex is transitive; criterion: b(y, y') (x) b(y', y) lies below
    every entry of a for each y != y'."""
    a, b, unit = _parts(a, b, y_unit)
    _require_pointed(a.q)
    return Check(is_transitive(_lexlike(a, b, unit, False)), _lemma4_criterion(a, b))


def lex_transitive_group_criterion(X, Y):
    """For groups X and Y: b(y, 1) (x) b(1, y) <= a(x, 0) for all x and y != 1."""
    if not (is_group(X.monoid) and is_group(Y.monoid)):
        raise AxiomError("both factors must be groups")
    q = X.q
    t = q.tensor_table
    one, zero = Y.identity, X.identity
    return all(q.leq_table[t[Y.a[y, one], Y.a[one, y]], X.a[x, zero]]
               for x in range(X.n) for y in range(Y.n) if y != one)


def _semidirect(X, Y, alpha):
    if alpha.acting != Y.monoid or alpha.acted != X.monoid:
        raise StructuralError("action does not match the given monoids")
    return SemidirectMonoid(X.monoid, Y.monoid, alpha)


def alpha_bar_is_vfunctor(X, Y, alpha):
    """Is (y, x) -> (alpha(y, x), y) a V-functor (Y,b)(x)(X,a) -> (X,a)(x)(Y,b)?"""
    src = tensor_vcat(Y.relation, X.relation)
    tgt = tensor_vcat(X.relation, Y.relation)
    fmap = [alpha(y, x) * Y.n + y for y in range(Y.n) for x in range(X.n)]
    return vfunctor_witness(fmap, src, tgt) is None


def prop3_tensor_vmonoid(X, Y, alpha):
    """computed: (X x_a Y, a (x) b) is a V-monoid; criterion: alpha-bar is a V-functor."""
    S = _semidirect(X, Y, alpha)
    return Check(is_vmonoid_bruteforce(S, tensor_relation(X, Y)),
                 alpha_bar_is_vfunctor(X, Y, alpha))


def _eq13(X, Y):
    q = X.q
    t = q.tensor_table
    yt, b, one = Y.monoid.table, Y.a, Y.identity
    ys = [y for y in range(Y.n) if y != one]
    for y1 in ys:
        for y2 in ys:
            if yt[y1, y2] != one:
                continue
            for y1p in ys:
                if yt[y1p, y2] != one:
                    continue
                for y2p in ys:
                    if yt[y1p, y2p] != one:
                        continue
                    if not _below_all(q, t[b[y1, y1p], b[y2, y2p]], X.a):
                        return False
    return True


def prop2_wlex_vmonoid(X, Y, alpha):
    """computed: (X x_a Y, wlex) is a V-monoid; criterion: the wlex
    transitivity condition plus the unit-product inequality."""
    _require_pointed(X.q)
    S = _semidirect(X, Y, alpha)
    computed = is_vmonoid_bruteforce(S, wlex_relation(X, Y))
    criterion = _lemma3_criterion(X.relation, Y.relation, Y.identity) and _eq13(X, Y)
    return Check(computed, criterion)


def _actions_are_vfunctors(X, Y, alpha):
    return all(is_vfunctor(alpha.table[y], X.relation, X.relation) for y in range(Y.n))


def prop6_lex_vmonoid(X, Y, alpha):
    """computed: (X x_a Y, lex) is a V-monoid; criterion: lex transitivity
    condition, every alpha_y a V-functor, and the two cancellation bounds."""
    _require_pointed(X.q)
    S = _semidirect(X, Y, alpha)
    computed = is_vmonoid_bruteforce(S, lex_relation(X, Y))
    criterion = (_lemma4_criterion(X.relation, Y.relation)
                 and _actions_are_vfunctors(X, Y, alpha)
                 and _cancellation_bounds(X, Y, alpha))
    return Check(computed, criterion)


def _cancellation_bounds(X, Y, alpha):
    q = X.q
    yt, b, a = Y.monoid.table, Y.a, X.a
    for y0 in range(Y.n):
        row = alpha.table[y0]
        moved = a[row[:, None], row[None, :]]
        for y in range(Y.n):
            for y2 in range(Y.n):
                if y == y2:
                    continue
                if yt[y0, y] == yt[y0, y2] and not _below_all(q, b[y, y2], moved):
                    return False
                if yt[y, y0] == yt[y2, y0] and not _below_all(q, b[y, y2], a):
                    return False
    return True


def corollary3_group_wlex(X, Y, alpha):
    """Y a group. computed: wlex gives a V-monoid; criterion: lex = wlex."""
    if not is_group(Y.monoid):
        raise AxiomError("Y must be a group")
    _require_pointed(X.q)
    S = _semidirect(X, Y, alpha)
    return Check(is_vmonoid_bruteforce(S, wlex_relation(X, Y)),
                 lex_relation(X, Y) == wlex_relation(X, Y))


def corollary2_group_lex(X, Y, alpha):
    """Y a group. computed: lex gives a V-monoid; criterion: lex transitivity
    condition and every alpha_y a V-functor."""
    if not is_group(Y.monoid):
        raise AxiomError("Y must be a group")
    _require_pointed(X.q)
    S = _semidirect(X, Y, alpha)
    return Check(is_vmonoid_bruteforce(S, lex_relation(X, Y)),
                 _lemma4_criterion(X.relation, Y.relation)
                 and _actions_are_vfunctors(X, Y, alpha))


class EnrichmentCandidate:
    """A relation proposed for X x_a Y; ``tag`` is tensor, wlex, lex or custom."""

    def __init__(self, monoid, relation, tag="custom"):
        if relation.shape != (monoid.n, monoid.n):
            raise StructuralError("relation does not fit the semidirect product")
        self.monoid = monoid
        self.relation = relation
        self.tag = tag

    def is_vmonoid(self):
        return is_vmonoid_bruteforce(self.monoid, self.relation)

    def to_json(self):
        return {"kind": self.tag, **self.relation.to_json()}


def standard_candidates(X, Y, alpha):
    S = _semidirect(X, Y, alpha)
    return {
        "tensor": EnrichmentCandidate(S, tensor_relation(X, Y), "tensor"),
        "lex": EnrichmentCandidate(S, lex_relation(X, Y), "lex"),
        "wlex": EnrichmentCandidate(S, wlex_relation(X, Y), "wlex"),
    }


def pi1_lemma(X, Y, alpha, c):
    """computed: the first projection is a V-functor (X x_a Y, c) -> (X, a);
    criterion: c <= a meet b entrywise."""
    S = _semidirect(X, Y, alpha)
    computed = is_vfunctor(S.pi1(), c, X.relation)
    bound = pullback_meet(X, Y)
    criterion = bool(X.q.leq_table[c.matrix, bound.matrix].all())
    return Check(computed, criterion)
