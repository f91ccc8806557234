"""Time the compiled and pure-Python kernel backends on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Both backends are run on every workload and their outputs compared, so a
speedup is only reported for matching results.
"""

import argparse
import time

import numpy as np

from qmon import kernels
from qmon.monoid import SemidirectMonoid, cyclic_group, saturating_monoid, trivial_action
from qmon.quantale import builtin_chain, builtin_two
from qmon.schreier import _constraint_rows, interval_choices
from qmon.semidirect import tensor_relation, wlex_relation
from qmon.vcat import discrete
from qmon.vmon import VMonoid


def _search_inputs():
    q = builtin_two()
    X = VMonoid(saturating_monoid(2), discrete(q, 3))
    Y = VMonoid(cyclic_group(3), discrete(q, 3))
    act = trivial_action(Y.monoid, X.monoid)
    S = SemidirectMonoid(X.monoid, Y.monoid, act)
    ch = interval_choices(q, tensor_relation(X, Y), wlex_relation(X, Y))
    n = S.n
    for z in range(n):
        ch[z * n + z] = [v for v in ch[z * n + z] if q.leq_table[q.unit, v]]
    width = max(len(c) for c in ch)
    arr = np.zeros((n * n, width), dtype=np.int32)
    for e, c in enumerate(ch):
        arr[e, :len(c)] = c
    rows, offsets = _constraint_rows(S)
    return (arr, [len(c) for c in ch], rows, offsets, q.tensor_table, q.leq_table)


def workloads(rng):
    q = builtin_chain(3, "truncated_add_reversed")
    n = 24
    op = saturating_monoid(n - 1).table
    rel = np.full((n, n), q.top, dtype=np.int32)   # chaotic: every scan runs to the end
    P = np.full(n, q.top, dtype=np.int32)
    rnd = rng.integers(0, q.n, size=(n, n)).astype(np.int32)
    f = rng.integers(0, n, size=n).astype(np.int32)
    return {
        "transitive (n=24, full scan)": (kernels.transitive_witness,
                                         (rel, q.tensor_table, q.leq_table)),
        "compatible (n=24, full scan)": (kernels.compatible_witness,
                                         (rel, op, q.tensor_table, q.leq_table)),
        "translation (n=24)": (kernels.translation_witness, (rel, op, q.leq_table)),
        "functor (n=24, random)": (kernels.functor_witness, (rnd, rel, f, q.leq_table)),
        "cone relation (n=24)": (kernels.cone_relation, (op, P, q.join_table, q.bottom)),
        "associativity (n=24)": (kernels.assoc_witness, (op,)),
        "M2 (n=24)": (kernels.m2_witness, (op, P, q.tensor_table, q.leq_table)),
        "M3 (n=24)": (kernels.m3_witness, (op, P, q.join_table, q.leq_table, q.bottom)),
        "enrichment search (3 x 3 over Two)": (kernels.search_relations, _search_inputs()),
    }


def _same(a, b):
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.array_equal(a, b)
    if isinstance(a, list) and isinstance(b, list):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    return a == b


def bench(fn, args, impl, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args, impl=impl)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args(argv)
    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled backend not built; only timing the Python kernels")
    rng = np.random.default_rng(ns.seed)
    print(f"{'workload':40s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, (fn, args) in workloads(rng).items():
        tp, outp = bench(fn, args, impls["python"], ns.repeat)
        if "cython" in impls:
            tc, outc = bench(fn, args, impls["cython"], ns.repeat)
            if not _same(outp, outc):
                raise SystemExit(f"backends disagree on {name}")
            print(f"{name:40s} {tp * 1e3:9.2f}ms {tc * 1e3:9.2f}ms {tp / tc:7.1f}x")
        else:
            print(f"{name:40s} {tp * 1e3:9.2f}ms {'-':>10s}")


if __name__ == "__main__":
    main()
