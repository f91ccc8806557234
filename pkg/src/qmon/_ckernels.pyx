# Compiled twins of qmon._pykernels; same signatures, same witness order.
import numpy as np


def reflexive_witness(const int[:, ::1] rel, const unsigned char[:, ::1] leq, int unit):
    cdef Py_ssize_t x, n = rel.shape[0]
    for x in range(n):
        if not leq[unit, rel[x, x]]:
            return x
    return -1


def transitive_witness(const int[:, ::1] rel, const int[:, ::1] tensor,
                       const unsigned char[:, ::1] leq):
    cdef Py_ssize_t x, y, z, n = rel.shape[0]
    cdef int rxy
    for x in range(n):
        for y in range(n):
            rxy = rel[x, y]
            for z in range(n):
                if not leq[tensor[rxy, rel[y, z]], rel[x, z]]:
                    return (x, y, z)
    return None


def functor_witness(const int[:, ::1] src, const int[:, ::1] tgt,
                    const int[::1] fmap, const unsigned char[:, ::1] leq):
    cdef Py_ssize_t x1, x2, n = src.shape[0]
    for x1 in range(n):
        for x2 in range(n):
            if not leq[src[x1, x2], tgt[fmap[x1], fmap[x2]]]:
                return (x1, x2)
    return None


def compatible_witness(const int[:, ::1] rel, const int[:, ::1] op,
                       const int[:, ::1] tensor, const unsigned char[:, ::1] leq):
    cdef Py_ssize_t x1, y1, x2, y2, n = rel.shape[0]
    cdef int r1, ox
    for x1 in range(n):
        for y1 in range(n):
            r1 = rel[x1, y1]
            for x2 in range(n):
                ox = op[x1, x2]
                for y2 in range(n):
                    if not leq[tensor[r1, rel[x2, y2]], rel[ox, op[y1, y2]]]:
                        return (x1, y1, x2, y2)
    return None


def translation_witness(const int[:, ::1] rel, const int[:, ::1] op,
                        const unsigned char[:, ::1] leq):
    cdef Py_ssize_t x, y, z, n = rel.shape[0]
    cdef int r
    for x in range(n):
        for y in range(n):
            r = rel[x, y]
            for z in range(n):
                if not leq[r, rel[op[x, z], op[y, z]]]:
                    return (x, y, z, 0)
                if not leq[r, rel[op[z, x], op[z, y]]]:
                    return (x, y, z, 1)
    return None


def cone_relation(const int[:, ::1] op, const int[::1] P,
                  const int[:, ::1] join, int bottom):
    cdef Py_ssize_t w, x, n = op.shape[0]
    cdef int y
    out = np.full((n, n), bottom, dtype=np.int32)
    cdef int[:, ::1] o = out
    for w in range(n):
        for x in range(n):
            y = op[w, x]
            o[x, y] = join[o[x, y], P[w]]
    return out


def assoc_witness(const int[:, ::1] op):
    cdef Py_ssize_t a, b, c, n = op.shape[0]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if op[op[a, b], c] != op[a, op[b, c]]:
                    return (a, b, c)
    return None


def m2_witness(const int[:, ::1] op, const int[::1] P,
               const int[:, ::1] tensor, const unsigned char[:, ::1] leq):
    cdef Py_ssize_t x, y, n = op.shape[0]
    for x in range(n):
        for y in range(n):
            if not leq[tensor[P[x], P[y]], P[op[x, y]]]:
                return (x, y)
    return None


def m3_witness(const int[:, ::1] op, const int[::1] P, const int[:, ::1] join,
               const unsigned char[:, ::1] leq, int bottom):
    cdef Py_ssize_t x, z, w, n = op.shape[0]
    cdef int target, s
    for x in range(n):
        for z in range(n):
            target = op[z, x]
            s = bottom
            for w in range(n):
                if op[w, z] == target:
                    s = join[s, P[w]]
            if not leq[P[x], s]:
                return (x, z)
    return None


def search_relations(const int[:, ::1] choices, const int[::1] nchoices,
                     const int[:, ::1] cons, const int[::1] offsets,
                     const int[:, ::1] tensor, const unsigned char[:, ::1] leq):
    cdef Py_ssize_t E = nchoices.shape[0]
    cdef Py_ssize_t e, i
    cdef bint good
    out = []
    if E == 0:
        return [()]
    for e in range(E):
        if nchoices[e] == 0:
            return out
    vals_arr = np.zeros(E, dtype=np.int32)
    pos_arr = np.zeros(E, dtype=np.int32)
    cdef int[::1] vals = vals_arr
    cdef int[::1] pos = pos_arr
    e = 0
    pos[0] = -1
    while e >= 0:
        pos[e] += 1
        if pos[e] >= nchoices[e]:
            e -= 1
            continue
        vals[e] = choices[e, pos[e]]
        good = True
        for i in range(offsets[e], offsets[e + 1]):
            if not leq[tensor[vals[cons[i, 0]], vals[cons[i, 1]]], vals[cons[i, 2]]]:
                good = False
                break
        if not good:
            continue
        if e == E - 1:
            out.append(tuple(vals_arr.tolist()))
        else:
            e += 1
            pos[e] = -1
    return out
