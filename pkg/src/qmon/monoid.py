"""Finite monoids, homomorphisms, actions and the plain semidirect product."""

import itertools
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import AxiomError, StructuralError
from .report import Report


class FiniteMonoid:
    """A multiplication table over elements 0..n-1 with a distinguished identity."""

    def __init__(self, table, identity=0, elements=None, name=None):
        try:
            t = np.array(table, dtype=np.int64)
        except (ValueError, TypeError):
            raise StructuralError("monoid table is ragged") from None
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise StructuralError(f"monoid table must be square and nonempty, got {t.shape}")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise StructuralError("monoid table entry out of range")
        if not 0 <= int(identity) < n:
            raise StructuralError(f"identity index {identity} out of range")
        if elements is None:
            elements = [str(i) for i in range(n)]
        elements = tuple(str(e) for e in elements)
        if len(elements) != n or len(set(elements)) != n:
            raise StructuralError("element names must be distinct, one per row")
        t = t.astype(np.int32)
        t.setflags(write=False)
        self.table = t
        self.n = n
        self.identity = int(identity)
        self.elements = elements
        self.name = name

    def op(self, a, b):
        return int(self.table[a, b])

    def index(self, name):
        try:
            return self.elements.index(str(name))
        except ValueError:
            raise StructuralError(f"{name!r} is not an element of {self.name or 'monoid'}") from None

    def __eq__(self, other):
        if not isinstance(other, FiniteMonoid):
            return NotImplemented
        return (self.identity == other.identity
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.identity, self.table.tobytes()))

    def __repr__(self):
        return f"<{self.name or 'FiniteMonoid'} order {self.n}>"

    def to_json(self):
        return {"elements": list(self.elements), "identity": self.identity,
                "table": self.table.tolist()}


def validate_monoid(m):
    r = Report(f"monoid {m.name or ''}".strip())
    w = kernels.assoc_witness(m.table)
    r.check("associativity", w, _lab(m, w))
    e = m.identity
    w = next(((x,) for x in range(m.n) if m.table[e, x] != x), None)
    r.check("left identity", w, _lab(m, w))
    w = next(((x,) for x in range(m.n) if m.table[x, e] != x), None)
    r.check("right identity", w, _lab(m, w))
    return r


def _lab(m, w):
    return () if w is None else tuple(m.elements[i] for i in w)


def is_monoid(m):
    return validate_monoid(m).ok


def hom_witness(fmap, source, target):
    """First failure of ``fmap`` being a monoid homomorphism, or None."""
    f = [int(v) for v in fmap]
    if len(f) != source.n or any(not 0 <= v < target.n for v in f):
        raise StructuralError("map does not fit the given monoids")
    if f[source.identity] != target.identity:
        return ("identity", source.identity)
    for a in range(source.n):
        for b in range(source.n):
            if f[source.table[a, b]] != target.table[f[a], f[b]]:
                return ("operation", a, b)
    return None


def is_monoid_hom(fmap, source, target):
    return hom_witness(fmap, source, target) is None


class MonoidHom:
    def __init__(self, source, target, fmap, check=True):
        self.source = source
        self.target = target
        self.fmap = tuple(int(v) for v in fmap)
        if check:
            w = hom_witness(self.fmap, source, target)
            if w is not None:
                raise AxiomError(f"not a monoid homomorphism: {w}")

    def __call__(self, x):
        return self.fmap[x]


class MonoidAction:
    """``table[y, x]`` is the action of y in ``acting`` on x in ``acted``."""

    def __init__(self, acting, acted, table, name=None):
        try:
            t = np.array(table, dtype=np.int64)
        except (ValueError, TypeError):
            raise StructuralError("action table is ragged") from None
        if t.shape != (acting.n, acted.n):
            raise StructuralError(
                f"action table has shape {t.shape}, expected {(acting.n, acted.n)}")
        if t.min() < 0 or t.max() >= acted.n:
            raise StructuralError("action table entry out of range")
        t = t.astype(np.int32)
        t.setflags(write=False)
        self.acting = acting
        self.acted = acted
        self.table = t
        self.name = name
        self._semidirect = None

    def semidirect(self):
        """The semidirect product X x_a Y, built once per action."""
        if self._semidirect is None:
            self._semidirect = SemidirectMonoid(self.acted, self.acting, self)
        return self._semidirect

    def __call__(self, y, x):
        return int(self.table[y, x])

    def __eq__(self, other):
        if not isinstance(other, MonoidAction):
            return NotImplemented
        return (self.acting == other.acting and self.acted == other.acted
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"<MonoidAction {self.table.tolist()}>"


def trivial_action(Y, X):
    return MonoidAction(Y, X, np.tile(np.arange(X.n), (Y.n, 1)), name="trivial")


def validate_action(act):
    """Action laws: unit acts trivially, composition, and action by endomorphisms."""
    Y, X, a = act.acting, act.acted, act.table
    r = Report("monoid action")
    one, zero = Y.identity, X.identity
    w = next(((x,) for x in range(X.n) if a[one, x] != x), None)
    r.check("unit", w)
    w = next(((y1, y2, x) for y1 in range(Y.n) for y2 in range(Y.n) for x in range(X.n)
              if a[Y.table[y1, y2], x] != a[y1, a[y2, x]]), None)
    r.check("composition", w)
    w = next(((y,) for y in range(Y.n) if a[y, zero] != zero), None)
    r.check("zero", w)
    w = next(((y, x1, x2) for y in range(Y.n) for x1 in range(X.n) for x2 in range(X.n)
              if a[y, X.table[x1, x2]] != X.table[a[y, x1], a[y, x2]]), None)
    r.check("additivity", w)
    return r


def _semidirect_table(X, Y, a):
    nx, ny = X.n, Y.n
    xs = np.repeat(np.arange(nx), ny)
    ys = np.tile(np.arange(ny), nx)
    x1, x2 = xs[:, None], xs[None, :]
    y1, y2 = ys[:, None], ys[None, :]
    xo = X.table[x1, np.asarray(a)[y1, x2]]
    yo = Y.table[y1, y2]
    return xo * ny + yo


def semidirect_is_monoid(X, Y, table):
    """Oracle side of the action equivalence: is X x Y with
    (x1, y1)(x2, y2) = (x1 + a(y1, x2), y1 y2) associative with identity (0, 1)?

    Works on an arbitrary function table, valid action or not.
    """
    t = _semidirect_table(X, Y, table)
    if kernels.assoc_witness(t) is not None:
        return False
    e = X.identity * Y.n + Y.identity
    idx = np.arange(t.shape[0])
    return bool((t[e] == idx).all() and (t[:, e] == idx).all())


class SemidirectMonoid(FiniteMonoid):
    """X x_a Y on pairs; pair (x, y) has flat index x * |Y| + y."""

    def __init__(self, X, Y, action):
        if action.acting != Y or action.acted != X:
            raise StructuralError("action does not match the given monoids")
        names = [f"({xn},{yn})" for xn in X.elements for yn in Y.elements]
        super().__init__(_semidirect_table(X, Y, action.table),
                         identity=X.identity * Y.n + Y.identity,
                         elements=names,
                         name=f"{X.name or 'X'} x| {Y.name or 'Y'}")
        self.X = X
        self.Y = Y
        self.action = action

    def pair(self, x, y):
        return x * self.Y.n + y

    def split(self, z):
        return divmod(int(z), self.Y.n)

    def iota1(self):
        return tuple(self.pair(x, self.Y.identity) for x in range(self.X.n))

    def iota2(self):
        return tuple(self.pair(self.X.identity, y) for y in range(self.Y.n))

    def pi1(self):
        return tuple(self.split(z)[0] for z in range(self.n))

    def pi2(self):
        return tuple(self.split(z)[1] for z in range(self.n))

    def recovery_holds(self):
        """(0, y)(x, 1) = (a(y, x), y) for all x, y."""
        X, Y, a = self.X, self.Y, self.action
        return all(
            self.op(self.pair(X.identity, y), self.pair(x, Y.identity))
            == self.pair(a(y, x), y)
            for x in range(X.n) for y in range(Y.n))


def semidirect_underlying(X, Y, action):
    r = validate_action(action)
    if not r.ok:
        raise AxiomError("not a monoid action; the semidirect product is not a monoid", r)
    return SemidirectMonoid(X, Y, action)


def direct_product(X, Y):
    return SemidirectMonoid(X, Y, trivial_action(Y, X))


def inverse(m, x):
    e = m.identity
    for y in range(m.n):
        if m.table[x, y] == e and m.table[y, x] == e:
            return y
    return None


def is_group(m):
    return all(inverse(m, x) is not None for x in range(m.n))


def is_submonoid(m, subset):
    s = set(int(v) for v in subset)
    return m.identity in s and all(m.table[a, b] in s for a in s for b in s)


def right_normal_witness(m, subset):
    """First (z, p) with z + p not in subset + z, or None."""
    s = sorted(set(int(v) for v in subset))
    for z in range(m.n):
        for p in s:
            zp = m.table[z, p]
            if not any(m.table[w, z] == zp for w in s):
                return (z, p)
    return None


def is_right_normal_submonoid(m, subset):
    return is_submonoid(m, subset) and right_normal_witness(m, subset) is None


# fixtures

def trivial_monoid():
    return FiniteMonoid([[0]], 0, ["1"], name="1")


def cyclic_group(n):
    i = np.arange(n)
    return FiniteMonoid((i[:, None] + i[None, :]) % n, 0, name=f"Z{n}")


def saturating_monoid(K):
    """{0, ..., K} under addition truncated at K."""
    i = np.arange(K + 1)
    return FiniteMonoid(np.minimum(i[:, None] + i[None, :], K), 0, name=f"N<={K}")


def symmetric_group(n):
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p q)(i) = p(q(i))
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    names = ["".join(str(v) for v in p) for p in perms]
    return FiniteMonoid(table, 0, names, name=f"S{n}")


def action_from_function(Y, X, fn, name=None):
    return MonoidAction(Y, X, [[fn(y, x) for x in range(X.n)] for y in range(Y.n)], name=name)


def _canonical(table, n):
    best = None
    for perm in itertools.permutations(range(1, n)):
        p = (0,) + perm
        inv = [0] * n
        for i, v in enumerate(p):
            inv[v] = i
        # relabel element i as p[i]
        t = tuple(p[table[inv[a]][inv[b]]] for a in range(n) for b in range(n))
        if best is None or t < best:
            best = t
    return best


@lru_cache(maxsize=None)
def _monoid_tables(n):
    cells = [(a, b) for a in range(1, n) for b in range(1, n)]
    t = [[-1] * n for _ in range(n)]
    for a in range(n):
        t[0][a] = a
        t[a][0] = a

    def consistent():
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                if ab < 0:
                    continue
                for c in range(n):
                    bc = t[b][c]
                    if bc < 0:
                        continue
                    l, r = t[ab][c], t[a][bc]
                    if l >= 0 and r >= 0 and l != r:
                        return False
        return True

    seen = set()

    def fill(i):
        if i == len(cells):
            seen.add(_canonical(t, n))
            return
        a, b = cells[i]
        for v in range(n):
            t[a][b] = v
            if consistent():
                fill(i + 1)
        t[a][b] = -1

    fill(0)
    return tuple(sorted(seen))


def enumerate_monoids(n):
    """All monoids of order n up to isomorphism, identity at index 0."""
    if n < 1:
        raise ValueError("order must be positive")
    return [FiniteMonoid(np.array(t).reshape(n, n), 0, name=f"M{n}.{i}")
            for i, t in enumerate(_monoid_tables(n))]


def endomorphisms(X):
    out = []
    rest = [x for x in range(X.n) if x != X.identity]
    for images in itertools.product(range(X.n), repeat=len(rest)):
        f = [0] * X.n
        f[X.identity] = X.identity
        for x, v in zip(rest, images):
            f[x] = v
        if hom_witness(f, X, X) is None:
            out.append(tuple(f))
    return out


def enumerate_actions(Y, X):
    """Every monoid action of Y on X (by endomorphisms), in a fixed order."""
    endos = endomorphisms(X)
    ident = tuple(range(X.n))
    ys = [y for y in range(Y.n) if y != Y.identity]
    rows = {Y.identity: ident}
    out = []

    def ok():
        for y1, r1 in rows.items():
            for y2, r2 in rows.items():
                y = int(Y.table[y1, y2])
                if y in rows and any(rows[y][x] != r1[r2[x]] for x in range(X.n)):
                    return False
        return True

    def fill(i):
        if i == len(ys):
            out.append(MonoidAction(Y, X, [rows[y] for y in range(Y.n)]))
            return
        for f in endos:
            rows[ys[i]] = f
            if ok():
                fill(i + 1)
        del rows[ys[i]]

    fill(0)
    return out
