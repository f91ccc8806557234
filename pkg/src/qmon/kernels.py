"""Backend selection for the scan kernels.

The compiled module is used when it was built; otherwise (or when
``QMON_PURE_PYTHON`` is set) the pure-Python module is used. Callers go
through the wrappers here, which normalise dtypes and contiguity.
"""

import os

import numpy as np

from . import _pykernels

if os.environ.get("QMON_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"


def backends():
    """Importable kernel modules by name, for cross-checking and benchmarks."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels

        found["cython"] = _ckernels
    except ImportError:
        pass
    return found


def _i(a):
    return np.ascontiguousarray(a, dtype=np.int32)


def _i1(a):
    return np.ascontiguousarray(np.asarray(a).reshape(-1), dtype=np.int32)


def _b(a):
    return np.ascontiguousarray(a, dtype=np.uint8)


def reflexive_witness(rel, leq, unit, impl=None):
    w = (impl or _impl).reflexive_witness(_i(rel), _b(leq), int(unit))
    return None if w < 0 else (w,)


def transitive_witness(rel, tensor, leq, impl=None):
    return (impl or _impl).transitive_witness(_i(rel), _i(tensor), _b(leq))


def functor_witness(src, tgt, fmap, leq, impl=None):
    return (impl or _impl).functor_witness(_i(src), _i(tgt), _i1(fmap), _b(leq))


def compatible_witness(rel, op, tensor, leq, impl=None):
    return (impl or _impl).compatible_witness(_i(rel), _i(op), _i(tensor), _b(leq))


def translation_witness(rel, op, leq, impl=None):
    return (impl or _impl).translation_witness(_i(rel), _i(op), _b(leq))


def cone_relation(op, P, join, bottom, impl=None):
    return (impl or _impl).cone_relation(_i(op), _i1(P), _i(join), int(bottom))


def assoc_witness(op, impl=None):
    return (impl or _impl).assoc_witness(_i(op))


def m2_witness(op, P, tensor, leq, impl=None):
    return (impl or _impl).m2_witness(_i(op), _i1(P), _i(tensor), _b(leq))


def m3_witness(op, P, join, leq, bottom, impl=None):
    return (impl or _impl).m3_witness(_i(op), _i1(P), _i(join), _b(leq), int(bottom))


def search_relations(choices, nchoices, cons, offsets, tensor, leq, impl=None):
    cons = np.asarray(cons, dtype=np.int32).reshape(-1, 3)
    return (impl or _impl).search_relations(
        _i(choices), _i1(nchoices), _i(cons), _i1(offsets), _i(tensor), _b(leq)
    )
