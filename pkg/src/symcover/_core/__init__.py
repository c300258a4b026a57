"""Orbit-partition kernels: compiled (Cython) with a pure-Python fallback.

The hot loop of the whole engine is: for every enumerated vector apply every
move, look the image up in the lex-sorted state table, and union the two
indices.  Both kernels implement exactly that and must agree bit for bit;
``SYMCOVER_BACKEND=pure|compiled`` forces a choice, default is compiled when
the extension built.
"""

from __future__ import annotations

import os

import numpy as np

from ..errors import PostconditionViolated
from . import _pure

try:
    from . import _speedups

    HAVE_COMPILED = True
except ImportError:  # pragma: no cover - depends on build environment
    _speedups = None
    HAVE_COMPILED = False


def active_backend(name=None) -> str:
    name = name or os.environ.get("SYMCOVER_BACKEND", "auto")
    if name == "pure":
        return "pure"
    if name == "compiled":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled kernel requested but not built")
        return "compiled"
    return "compiled" if HAVE_COMPILED else "pure"


def _flatten_programs(programs):
    flat, offsets = [], []
    for prog in programs:
        offsets.append(len(flat))
        flat.append(len(prog))
        for slot, tokens in prog:
            flat.append(slot)
            flat.append(len(tokens))
            for kind, v in tokens:
                flat.append(kind)
                flat.append(v)
    return (
        np.asarray(flat, dtype=np.int32),
        np.asarray(offsets, dtype=np.int32),
    )


def partition(G, states, programs, backend=None):
    """Component label (minimal member index) for each state.

    states: lex-sorted list of id tuples; programs: per-move tuples of
    (slot, ((kind, value), ...)).  Every move image must itself be a state.
    """
    if not states:
        return []
    which = active_backend(backend)
    if which == "pure":
        return _pure.partition(states, programs, G.table, G.inverse, G.identity)
    arr = np.asarray(states, dtype=np.int32)
    table = np.asarray(G.table, dtype=np.int32)
    inv = np.asarray(G.inverse, dtype=np.int32)
    flat, offsets = _flatten_programs(programs)
    labels = _speedups.partition_kernel(arr, flat, offsets, table, inv, G.identity)
    if labels is None:
        raise PostconditionViolated("a move image left the enumerated state space")
    return labels.tolist()
