"""Exhaustive and random fixture families shared by the test modules."""

from functools import lru_cache

import numpy as np

from qmon.monoid import cyclic_group, enumerate_actions, enumerate_monoids
from qmon.quantale import builtin_chain, builtin_two
from qmon.vcat import VRelation, closure, enumerate_preorders, enumerate_vcategories
from qmon.vmon import VMonoid, is_vmon_star, is_vmonoid_bruteforce

TWO = builtin_two()
CHAIN3 = builtin_chain(3, "meet")
COST3 = builtin_chain(3, "truncated_add_reversed")
CHAINS = (CHAIN3, COST3)


@lru_cache(maxsize=None)
def monoids(n):
    return tuple(enumerate_monoids(n))


@lru_cache(maxsize=None)
def relations(q, n):
    if q is TWO:
        return tuple(VRelation(TWO, m) for m in enumerate_preorders(n))
    return tuple(enumerate_vcategories(q, n))


@lru_cache(maxsize=None)
def vmonoids(q, max_n, groups_only=False):
    """Every (monoid up to iso, compatible V-category) with 1 <= |X| <= max_n."""
    out = []
    for n in range(1, max_n + 1):
        ms = [cyclic_group(n)] if groups_only else monoids(n)
        for m in ms:
            for r in relations(q, n):
                if is_vmonoid_bruteforce(m, r):
                    out.append(VMonoid(m, r, check=False))
    return tuple(out)


@lru_cache(maxsize=None)
def star_vmonoids(q, max_n):
    return tuple(v for v in vmonoids(q, max_n) if is_vmon_star(v))


def triples(xs, ys):
    for X in xs:
        for Y in ys:
            for act in enumerate_actions(Y.monoid, X.monoid):
                yield X, Y, act


def random_vcategory(q, n, rng):
    """Random entries, diagonal raised to the unit, then closed transitively."""
    m = rng.integers(0, q.n, size=(n, n)).astype(np.int32)
    idx = np.arange(n)
    m[idx, idx] = q.join_table[m[idx, idx], q.unit]
    return closure(VRelation(q, m))


def random_vmonoid(q, m, rng, tries=50):
    """A compatible V-category on m found by rejection; discrete as fallback."""
    for _ in range(tries):
        r = random_vcategory(q, m.n, rng)
        if is_vmonoid_bruteforce(m, r):
            return VMonoid(m, r, check=False)
    d = np.full((m.n, m.n), q.bottom, dtype=np.int32)
    np.fill_diagonal(d, q.unit)
    return VMonoid(m, VRelation(q, d), check=False)
