"""Brute force over every Two-relation on a small carrier at once.

A relation on N points is one row of a (2**(N*N), N, N) boolean stack;
each condition is evaluated for the whole stack with numpy broadcasting.
The formulas restate the pure-list ones in ``oracles`` and are checked
against them on samples.
"""

import numpy as np


def all_two_relations(n):
    codes = np.arange(2 ** (n * n), dtype=np.int64)
    bits = (codes[:, None] >> np.arange(n * n - 1, -1, -1)) & 1
    return bits.reshape(-1, n, n).astype(bool)


def _transitive(C):
    n = C.shape[1]
    ok = np.ones(len(C), dtype=bool)
    for y in range(n):
        through = C[:, :, y, None] & C[:, None, y, :]
        ok &= ~(through & ~C).any(axis=(1, 2))
    return ok


def _compatible(C, op):
    n = C.shape[1]
    ok = np.ones(len(C), dtype=bool)
    for x1 in range(n):
        for y1 in range(n):
            lhs = C[:, x1, y1, None, None] & C
            rhs = C[:, op[x1][:, None], op[y1][None, :]]
            ok &= ~(lhs & ~rhs).any(axis=(1, 2))
    return ok


def schreier_normalized_all(opx, ex, a, opy, ey, b, alpha):
    """Boolean mask over all_two_relations(|X||Y|): S1-S3 hold and
    (X x_a Y, c) is a preordered monoid, for the canonical maps."""
    opx, opy, alpha = np.asarray(opx), np.asarray(opy), np.asarray(alpha)
    a, b = np.asarray(a, dtype=bool), np.asarray(b, dtype=bool)
    nx, ny = len(opx), len(opy)
    n = nx * ny
    xs, ys = np.divmod(np.arange(n), ny)
    op = opx[xs[:, None], alpha[ys[:, None], xs[None, :]]] * ny + opy[ys[:, None], ys[None, :]]
    C = all_two_relations(n)
    ok = C[:, np.arange(n), np.arange(n)].all(axis=1)
    ok &= ~(C & ~b[ys[:, None], ys[None, :]]).any(axis=(1, 2))               # S1
    k = xs[ys == ey] * ny + ey
    ok &= (C[:, k[:, None], k[None, :]] == a).all(axis=(1, 2))               # S2
    s = ex * ny + np.arange(ny)
    ok &= ~(b & ~C[:, s[:, None], s[None, :]]).any(axis=(1, 2))              # S3
    idx = np.flatnonzero(ok)
    keep = _transitive(C[idx])
    idx = idx[keep]
    idx = idx[_compatible(C[idx], op)]
    return C[idx]
