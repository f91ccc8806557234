"""Pure-Python kernels; reference behaviour for the compiled module.

All tables are dense integer arrays indexed by element number. ``leq`` is the
quantale order as a 0/1 matrix, ``tensor`` and ``join`` are quantale tables,
``op`` a monoid table. Witness search order is lexicographic in the returned
tuple, and the compiled module must return identical witnesses.
"""

import numpy as np


def reflexive_witness(rel, leq, unit):
    rel = rel.tolist()
    row = leq[unit].tolist()
    for x in range(len(rel)):
        if not row[rel[x][x]]:
            return x
    return -1


def transitive_witness(rel, tensor, leq):
    rel = rel.tolist()
    tensor = tensor.tolist()
    leq = leq.tolist()
    n = len(rel)
    for x in range(n):
        rx = rel[x]
        for y in range(n):
            tx = tensor[rx[y]]
            ry = rel[y]
            for z in range(n):
                if not leq[tx[ry[z]]][rx[z]]:
                    return (x, y, z)
    return None


def functor_witness(src, tgt, fmap, leq):
    src = src.tolist()
    tgt = tgt.tolist()
    leq = leq.tolist()
    f = [int(v) for v in fmap]
    n = len(src)
    for x1 in range(n):
        t = tgt[f[x1]]
        for x2 in range(n):
            if not leq[src[x1][x2]][t[f[x2]]]:
                return (x1, x2)
    return None


def compatible_witness(rel, op, tensor, leq):
    """First (x1, y1, x2, y2) with a(x1,y1) (x) a(x2,y2) not <= a(x1x2, y1y2)."""
    rel = rel.tolist()
    op = op.tolist()
    tensor = tensor.tolist()
    leq = leq.tolist()
    n = len(rel)
    for x1 in range(n):
        ox = op[x1]
        for y1 in range(n):
            trow = tensor[rel[x1][y1]]
            oy = op[y1]
            for x2 in range(n):
                rx2 = rel[x2]
                r = rel[ox[x2]]
                for y2 in range(n):
                    if not leq[trow[rx2[y2]]][r[oy[y2]]]:
                        return (x1, y1, x2, y2)
    return None


def translation_witness(rel, op, leq):
    """First (x, y, z, side): side 0 is a(x,y) <= a(x+z, y+z), side 1 is
    a(x,y) <= a(z+x, z+y)."""
    rel = rel.tolist()
    op = op.tolist()
    leq = leq.tolist()
    n = len(rel)
    for x in range(n):
        for y in range(n):
            row = leq[rel[x][y]]
            for z in range(n):
                if not row[rel[op[x][z]][op[y][z]]]:
                    return (x, y, z, 0)
                if not row[rel[op[z][x]][op[z][y]]]:
                    return (x, y, z, 1)
    return None


def cone_relation(op, P, join, bottom):
    """a_P(x, y) = join of P(w) over all w with y = w + x."""
    op = op.tolist()
    join = join.tolist()
    P = [int(v) for v in P]
    n = len(op)
    out = [[bottom] * n for _ in range(n)]
    for w in range(n):
        pw = P[w]
        ow = op[w]
        for x in range(n):
            y = ow[x]
            out[x][y] = join[out[x][y]][pw]
    return np.array(out, dtype=np.int32).reshape(n, n)


def assoc_witness(op):
    op = op.tolist()
    n = len(op)
    for a in range(n):
        oa = op[a]
        for b in range(n):
            ab = oa[b]
            for c in range(n):
                if op[ab][c] != oa[op[b][c]]:
                    return (a, b, c)
    return None


def m2_witness(op, P, tensor, leq):
    op = op.tolist()
    tensor = tensor.tolist()
    leq = leq.tolist()
    P = [int(v) for v in P]
    n = len(op)
    for x in range(n):
        for y in range(n):
            if not leq[tensor[P[x]][P[y]]][P[op[x][y]]]:
                return (x, y)
    return None


def m3_witness(op, P, join, leq, bottom):
    """First (x, z) with P(x) not <= join{P(w) | z + x = w + z}."""
    op = op.tolist()
    join = join.tolist()
    leq = leq.tolist()
    P = [int(v) for v in P]
    n = len(op)
    for x in range(n):
        for z in range(n):
            target = op[z][x]
            s = bottom
            for w in range(n):
                if op[w][z] == target:
                    s = join[s][P[w]]
            if not leq[P[x]][s]:
                return (x, z)
    return None


def search_relations(choices, nchoices, cons, offsets, tensor, leq):
    """Backtracking over entry assignments with constraint pruning.

    Entry ``e`` takes values ``choices[e, :nchoices[e]]`` in order. Each row
    ``(e1, e2, e3)`` of ``cons`` demands ``tensor[v[e1], v[e2]] <= v[e3]`` and
    is checked as soon as its largest entry index is assigned; the rows owned
    by entry ``e`` are ``cons[offsets[e]:offsets[e + 1]]``. Returns every
    complete assignment, in lexicographic order of choice indices.
    """
    choices = choices.tolist()
    nch = [int(c) for c in nchoices]
    cons = cons.tolist()
    offsets = [int(o) for o in offsets]
    tensor = tensor.tolist()
    leq = leq.tolist()
    E = len(nch)
    if E == 0:
        return [()]
    if min(nch) == 0:
        return []
    vals = [0] * E
    pos = [0] * E
    out = []
    e = 0
    pos[0] = -1
    while e >= 0:
        pos[e] += 1
        if pos[e] >= nch[e]:
            e -= 1
            continue
        vals[e] = choices[e][pos[e]]
        good = True
        for i in range(offsets[e], offsets[e + 1]):
            e1, e2, e3 = cons[i]
            if not leq[tensor[vals[e1]][vals[e2]]][vals[e3]]:
                good = False
                break
        if not good:
            continue
        if e == E - 1:
            out.append(tuple(vals))
        else:
            e += 1
            pos[e] = -1
    return out
