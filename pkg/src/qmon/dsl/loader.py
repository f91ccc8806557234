"""Turn parsed definitions into quantales, monoids, V-monoids and friends.

Building is lenient about axioms: objects are constructed without their
mathematical validation so that ``check`` can report violations. Only
malformed input (unknown names, wrong counts) is rejected here.
"""

import re

import numpy as np

from .. import config
from ..errors import AxiomError, StructuralError
from ..monoid import (FiniteMonoid, MonoidAction, cyclic_group, saturating_monoid,
                      symmetric_group, trivial_action, trivial_monoid)
from ..quantale import Quantale, builtin_chain, builtin_two
from ..schreier import EnrichedAction, SplitExtensionCandidate
from ..vcat import VRelation, closure, discrete
from ..vmon import ConeFunction, VMonoid
from .syntax import (ArityError, DSLSyntaxError, DuplicateNameError,
                     UnresolvedReferenceError, parse_definitions, print_definitions,
                     tuple_items)

# clause -> kinds it may refer to, per definition kind
REFERENCES = {
    "vrelation": {"over": ("quantale",), "on": ("monoid", "vmonoid")},
    "vmonoid": {"monoid": ("monoid",), "relation": ("vrelation",), "over": ("quantale",)},
    "action": {"acting": ("monoid", "vmonoid"), "on": ("monoid", "vmonoid")},
    "cone": {"over": ("quantale",), "on": ("monoid", "vmonoid")},
    "enriched_action": {"acting": ("vmonoid",), "on": ("vmonoid",), "action": ("action",)},
    "extension": {"kernel": ("vmonoid",), "middle": ("vmonoid",), "quotient": ("vmonoid",)},
}


def _builtin(name):
    """(kind, factory) for the names available without a definition."""
    if name == "Two":
        return "quantale", builtin_two
    if name == "Trivial":
        return "monoid", trivial_monoid
    m = re.fullmatch(r"(Chain|Cost|Z|Sat|S)(\d+)", name)
    if not m:
        return None
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        return None
    return {
        "Chain": ("quantale", lambda: builtin_chain(n, "meet")),
        "Cost": ("quantale", lambda: builtin_chain(n, "truncated_add_reversed")),
        "Z": ("monoid", lambda: cyclic_group(n)),
        "Sat": ("monoid", lambda: saturating_monoid(n)),
        "S": ("monoid", lambda: symmetric_group(n)),
    }[kind]


class Document:
    def __init__(self, definitions=()):
        self.definitions = {}
        for d in definitions:
            if d.name in self.definitions:
                first = self.definitions[d.name]
                raise DuplicateNameError(
                    f"{d.name!r} already defined at line {first.line}", d.line, d.col)
            self.definitions[d.name] = d
        self.notes = []
        self._built = {}
        self._building = set()

    def __eq__(self, other):
        if not isinstance(other, Document):
            return NotImplemented
        return list(self.definitions.values()) == list(other.definitions.values())

    def __len__(self):
        return len(self.definitions)

    def __contains__(self, name):
        return name in self.definitions

    def names(self):
        return list(self.definitions)

    def kind(self, name):
        if name in self.definitions:
            return self.definitions[name].kind
        b = _builtin(name)
        if b is None:
            raise UnresolvedReferenceError(f"no definition named {name!r}")
        return b[0]

    def to_text(self):
        return print_definitions(self.definitions.values())

    # reference checking

    def check_references(self):
        for d in self.definitions.values():
            for c in d.clauses:
                allowed = REFERENCES.get(d.kind, {}).get(c.keyword)
                if allowed is None:
                    continue
                ref = _single(c)
                target = self.definitions.get(ref)
                kind = target.kind if target else (_builtin(ref) or (None,))[0]
                if kind is None:
                    raise UnresolvedReferenceError(f"{ref!r} is not defined", c.line, c.col,
                                                   allowed)
                if kind not in allowed:
                    raise UnresolvedReferenceError(
                        f"{ref!r} is a {kind}, not a {' or '.join(allowed)}",
                        c.line, c.col, allowed)

    # building

    def get(self, name):
        if name in self._built:
            return self._built[name]
        if name not in self.definitions:
            b = _builtin(name)
            if b is None:
                raise UnresolvedReferenceError(f"{name!r} is not defined")
            obj = b[1]()
            self._built[name] = obj
            return obj
        if name in self._building:
            d = self.definitions[name]
            raise UnresolvedReferenceError(f"circular reference through {name!r}", d.line, d.col)
        self._building.add(name)
        try:
            d = self.definitions[name]
            obj = _BUILDERS[d.kind](self, d)
        finally:
            self._building.discard(name)
        self._built[name] = obj
        return obj

    def build_all(self):
        for name in self.definitions:
            self.get(name)
        return self

    def monoid(self, name):
        obj = self.get(name)
        return obj.monoid if isinstance(obj, VMonoid) else obj


def parse(text):
    """Parse, check names and references, and build every definition."""
    doc = Document(parse_definitions(text))
    doc.check_references()
    doc.build_all()
    return doc


def load(path):
    with open(path, encoding="utf-8") as f:
        return parse(f.read())


# helpers

def _single(c):
    if len(c.groups) != 1 or len(c.groups[0]) != 1:
        raise ArityError(f"clause '{c.keyword}' takes exactly one name", c.line, c.col)
    return c.groups[0][0]


def _flat(c):
    return [item for g in c.groups for item in g]


def _index(names, atom, c, what="element"):
    try:
        return names.index(atom)
    except ValueError:
        raise UnresolvedReferenceError(f"{atom!r} is not a known {what}", c.line, c.col,
                                       tuple(names)) from None


def _require(d, keyword):
    c = d.clause(keyword)
    if c is None:
        raise DSLSyntaxError(f"{d.kind} {d.name!r} needs a '{keyword}' clause",
                             d.line, d.col, (keyword,))
    return c


def _elements(d):
    c = _require(d, "elements")
    names = _flat(c)
    if len(set(names)) != len(names):
        raise DuplicateNameError(f"repeated element name in {d.name!r}", c.line, c.col)
    if not names:
        raise ArityError("an element list cannot be empty", c.line, c.col)
    if len(names) > config.MAX_ELEMENTS:
        raise ArityError(f"{len(names)} elements exceed the cap of {config.MAX_ELEMENTS}",
                         c.line, c.col)
    return names


def _order_pairs(c, names):
    """'a <= b <= c' chains, one per group."""
    pairs = []
    for g in c.groups:
        if len(g) < 3 or len(g) % 2 == 0 or any(
                (t == "<=") != (i % 2 == 1) for i, t in enumerate(g)):
            raise DSLSyntaxError("order entries look like 'a <= b'", c.line, c.col, ("'<='",))
        idx = [_index(names, t, c) for t in g[::2]]
        pairs.extend(zip(idx, idx[1:]))
    return pairs


def _closed_order(n, pairs):
    m = np.eye(n, dtype=bool)
    for a, b in pairs:
        m[a, b] = True
    before = int(m.sum())
    for k in range(n):
        m |= m[:, k][:, None] & m[k, :][None, :]
    return m, int(m.sum()) - before


def _triples(c, names):
    out = []
    for g in c.groups:
        if len(g) != 4 or g[2] != "->":
            return None
        out.append(tuple(_index(names, t, c) for t in (g[0], g[1], g[3])))
    return out


def _rows(c, nrows, ncols, names):
    if len(c.groups) != nrows:
        raise ArityError(f"'{c.keyword}' needs {nrows} rows, got {len(c.groups)}",
                         c.line, c.col)
    out = []
    for i, g in enumerate(c.groups):
        if len(g) != ncols:
            raise ArityError(f"row {i + 1} of '{c.keyword}' has {len(g)} entries, "
                             f"expected {ncols}", c.line, c.col)
        out.append([_index(names, t, c) for t in g])
    return out


# builders

def _build_quantale(doc, d):
    names = _elements(d)
    n = len(names)
    oc = d.clause("order")
    leq, added = _closed_order(n, _order_pairs(oc, names) if oc else [])
    if added:
        doc.notes.append(f"{d.name}: order closure added {added} pair(s)")
    tc = _require(d, "tensor")
    uc = d.clause("unit")
    probe = Quantale(names, leq, np.zeros((n, n), dtype=int), 0, name=d.name)
    if len(tc.groups) == 1 and tc.groups[0] == ("meet",):
        tensor = probe.meet_table
        if (tensor < 0).any():
            raise AxiomError(f"{d.name}: 'tensor meet' needs a lattice order")
        unit = _index(names, _single(uc), uc) if uc else probe.top
    else:
        triples = _triples(tc, names)
        if triples is None:
            raise DSLSyntaxError("tensor entries look like 'a b -> c'", tc.line, tc.col,
                                 ("'meet'", "'a b -> c'"))
        tensor = -np.ones((n, n), dtype=int)
        for a, b, v in triples:
            for i, j in ((a, b), (b, a)):
                if tensor[i, j] >= 0 and tensor[i, j] != v:
                    raise AxiomError(f"{d.name}: tensor of {names[a]} and {names[b]} is "
                                     "given two values; only commutative tensors are supported")
                tensor[i, j] = v
        missing = np.argwhere(tensor < 0)
        if len(missing):
            a, b = missing[0]
            raise ArityError(f"tensor of {names[a]} and {names[b]} is not given",
                             tc.line, tc.col)
        if uc is None:
            raise DSLSyntaxError(f"quantale {d.name!r} needs a 'unit' clause",
                                 d.line, d.col, ("unit",))
        unit = _index(names, _single(uc), uc)
    return Quantale(names, leq.astype(int), tensor, unit, name=d.name)


def _build_monoid(doc, d):
    names = _elements(d)
    n = len(names)
    ic = d.clause("identity")
    e = _index(names, _single(ic), ic) if ic else 0
    tc = _require(d, "table")
    triples = _triples(tc, names)
    if triples is not None:
        table = -np.ones((n, n), dtype=int)
        for a, b, v in triples:
            table[a, b] = v
        missing = np.argwhere(table < 0)
        if len(missing):
            a, b = missing[0]
            raise ArityError(f"product of {names[a]} and {names[b]} is not given",
                             tc.line, tc.col)
    else:
        table = _rows(tc, n, n, names)
    return FiniteMonoid(table, e, names, name=d.name)


def _quantale(doc, d):
    c = d.clause("over")
    return doc.get(_single(c)) if c else builtin_two()


def _relation_body(doc, d, q, names):
    n = len(names)
    mc, oc = d.clause("matrix"), d.clause("order")
    if mc is not None and oc is not None:
        raise DSLSyntaxError("give either 'matrix' or 'order', not both", oc.line, oc.col)
    if mc is not None:
        return VRelation(q, _rows(mc, n, n, list(q.elements)))
    if oc is not None:
        m = np.full((n, n), q.bottom, dtype=np.int32)
        for a, b in _order_pairs(oc, names):
            m[a, b] = q.top
        rel = closure(VRelation(q, m))
        added = int((rel.matrix != m).sum()) - n
        if added > 0:
            doc.notes.append(f"{d.name}: order closure added {added} pair(s)")
        return rel
    return discrete(q, n)


def _build_vrelation(doc, d):
    q = _quantale(doc, d)
    oc = d.clause("on")
    names = list(doc.monoid(_single(oc)).elements) if oc else _elements(d)
    return _relation_body(doc, d, q, names)


def _build_vmonoid(doc, d):
    m = doc.get(_single(_require(d, "monoid")))
    rc = d.clause("relation")
    if rc is not None:
        rel = doc.get(_single(rc))
        if rel.n != m.n:
            raise ArityError(f"relation {rc.groups[0][0]!r} has {rel.n} points, "
                             f"monoid has {m.n}", rc.line, rc.col)
    else:
        rel = _relation_body(doc, d, _quantale(doc, d), list(m.elements))
    return VMonoid(m, rel, check=False, name=d.name)


def _build_action(doc, d):
    Y = doc.monoid(_single(_require(d, "acting")))
    X = doc.monoid(_single(_require(d, "on")))
    if d.clause("trivial") is not None:
        return MonoidAction(Y, X, trivial_action(Y, X).table, name=d.name)
    tc = _require(d, "table")
    return MonoidAction(Y, X, _rows(tc, Y.n, X.n, list(X.elements)), name=d.name)


def _build_cone(doc, d):
    q = _quantale(doc, d)
    m = doc.monoid(_single(_require(d, "on")))
    names = list(m.elements)
    cc = _require(d, "cone")
    values = np.full(m.n, q.bottom, dtype=np.int32)
    for g in cc.groups:
        if "->" not in g:
            for t in g:
                values[_index(names, t, cc)] = q.top
        elif len(g) == 3 and g[1] == "->":
            values[_index(names, g[0], cc)] = _index(list(q.elements), g[2], cc,
                                                     "quantale element")
        else:
            raise DSLSyntaxError("cone entries are elements or 'x -> v'", cc.line, cc.col)
    return m, ConeFunction(q, values)


def _build_enriched(doc, d):
    Y = doc.get(_single(_require(d, "acting")))
    X = doc.get(_single(_require(d, "on")))
    ac = _require(d, "action")
    alpha = doc.get(_single(ac))
    if alpha.acting != Y.monoid or alpha.acted != X.monoid:
        raise ArityError(f"action {ac.groups[0][0]!r} does not act by {Y.name} on {X.name}",
                         ac.line, ac.col)
    q = X.q
    cc = _require(d, "cone")
    P = np.full((X.n, Y.n), q.bottom, dtype=np.int32)
    for g in cc.groups:
        pair = tuple_items(g[0])
        if pair is None or len(pair) != 2 or len(g) not in (1, 3) or (
                len(g) == 3 and g[1] != "->"):
            raise DSLSyntaxError("cone entries are '(x, y)' or '(x, y) -> v'",
                                 cc.line, cc.col, ("'(x, y)'",))
        x = _index(list(X.elements), pair[0], cc)
        y = _index(list(Y.elements), pair[1], cc)
        P[x, y] = q.top if len(g) == 1 else _index(list(q.elements), g[2], cc,
                                                   "quantale element")
    return X, Y, EnrichedAction(alpha, P, q)


def _build_extension(doc, d):
    X = doc.get(_single(_require(d, "kernel")))
    Z = doc.get(_single(_require(d, "middle")))
    Y = doc.get(_single(_require(d, "quotient")))
    maps = {}
    for key, src, tgt in (("k", X, Z), ("p", Z, Y), ("s", Y, Z)):
        c = _require(d, key)
        items = _flat(c)
        if len(items) != src.n:
            raise ArityError(f"map {key} lists {len(items)} images, source has {src.n}",
                             c.line, c.col)
        maps[key] = [_index(list(tgt.elements), t, c) for t in items]
    try:
        return SplitExtensionCandidate(X, Z, Y, maps["k"], maps["p"], maps["s"])
    except StructuralError as e:
        raise ArityError(str(e), d.line, d.col) from None


_BUILDERS = {
    "quantale": _build_quantale,
    "monoid": _build_monoid,
    "vrelation": _build_vrelation,
    "vmonoid": _build_vmonoid,
    "action": _build_action,
    "cone": _build_cone,
    "enriched_action": _build_enriched,
    "extension": _build_extension,
}
