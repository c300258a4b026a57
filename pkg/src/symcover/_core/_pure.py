"""Pure-Python orbit-partition kernel (fallback for the compiled one)."""

from __future__ import annotations

from ..errors import PostconditionViolated

SLOT = 0
SLOT_INV = 1


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def partition(states, programs, table, inverse, identity):
    """Union each state with its image under every move; return, per state,
    the minimal member index of its component."""
    index = {s: i for i, s in enumerate(states)}
    parent = list(range(len(states)))
    for i, s in enumerate(states):
        for prog in programs:
            img = list(s)
            for slot, tokens in prog:
                val = identity
                for kind, v in tokens:
                    if kind == SLOT:
                        op = s[v]
                    elif kind == SLOT_INV:
                        op = inverse[s[v]]
                    else:
                        op = v
                    val = table[val][op]
                img[slot] = val
            j = index.get(tuple(img))
            if j is None:
                raise PostconditionViolated(
                    "a move image left the enumerated state space"
                )
            ri, rj = _find(parent, i), _find(parent, j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    labels = [0] * len(states)
    for i in range(len(states)):
        labels[i] = _find(parent, i)
    return labels
