"""Concrete finite groups given by full multiplication tables.

Convention used everywhere in the package: ``table[x][y]`` is the product
"x then y".  For permutations this means ``(p * q)(i) = q(p(i))``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    NoIdentity,
    NoInverse,
    NotAssociative,
    SizeGuardExceeded,
    UnknownPreset,
)

SIZE_GUARD = 256
AUT_GUARD = 64


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group with elements 0..order-1 and a full Cayley table.

    Instances are immutable after construction and safe to share across
    workers.  Use the module-level constructors; ``__init__`` does not
    validate.
    """

    order: int
    table: tuple  # tuple of tuples, table[x][y] = x*y
    labels: tuple
    identity: int
    inverse: tuple
    element_order: tuple
    conjugacy_class: tuple
    name: str = "group"

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv(self, x: int) -> int:
        return self.inverse[x]

    def conj(self, h: int, x: int) -> int:
        """h * x * h^-1."""
        return self.table[self.table[h][x]][self.inverse[h]]

    def commutator(self, x: int, y: int) -> int:
        """[x, y] = x y x^-1 y^-1."""
        t = self.table
        return t[t[t[x][y]][self.inverse[x]]][self.inverse[y]]

    def elements(self) -> range:
        return range(self.order)

    def element_orders_multiset(self) -> tuple:
        return tuple(sorted(self.element_order))

    def conjugacy_classes(self) -> list:
        classes: dict = {}
        for x in self.elements():
            classes.setdefault(self.conjugacy_class[x], []).append(x)
        return [classes[k] for k in sorted(classes)]

    def canonical_hash(self) -> str:
        """Stable hash of the table after canonical relabeling.

        Elements are reordered as identity first, then by
        (element order, label); the relabeled table is hashed.
        """
        key = sorted(
            self.elements(),
            key=lambda x: (x != self.identity, self.element_order[x], self.labels[x]),
        )
        pos = {x: i for i, x in enumerate(key)}
        h = hashlib.sha256()
        for x in key:
            h.update(bytes(str([pos[self.table[x][y]] for y in key]), "ascii"))
        return h.hexdigest()


def _derive_metadata(order, table, labels, name):
    n = order
    arr = np.asarray(table, dtype=np.int64)
    # identity: two-sided
    identity = None
    for e in range(n):
        if all(arr[e][y] == y for y in range(n)) and all(arr[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentity("no two-sided identity element")
    # associativity, exhaustively: arr[arr[x,y],z] == arr[x,arr[y,z]]
    left = arr[arr]          # left[x,y,z] = arr[arr[x,y], z]
    right = arr[:, arr]      # right[x,y,z] = arr[x, arr[y,z]]
    if not np.array_equal(left, right):
        x, y, z = map(int, np.argwhere(left != right)[0])
        raise NotAssociative(x, y, z)
    inverse = [None] * n
    for x in range(n):
        for y in range(n):
            if arr[x][y] == identity and arr[y][x] == identity:
                inverse[x] = y
                break
        if inverse[x] is None:
            raise NoInverse(x)
    element_order = []
    for x in range(n):
        p, k = x, 1
        while p != identity:
            p = int(arr[p][x])
            k += 1
        element_order.append(k)
    # conjugacy classes: closure under conjugation by every h
    class_of = [None] * n
    next_class = 0
    for x in range(n):
        if class_of[x] is not None:
            continue
        for h in range(n):
            y = int(arr[arr[h][x]][inverse[h]])
            class_of[y] = next_class
        next_class += 1
    return FiniteGroup(
        order=n,
        table=tuple(tuple(int(v) for v in row) for row in table),
        labels=tuple(labels),
        identity=identity,
        inverse=tuple(inverse),
        element_order=tuple(element_order),
        conjugacy_class=tuple(class_of),
        name=name,
    )


def group_from_table(order, table, labels=None, name="group"):
    """Validate a Cayley table and build a FiniteGroup with derived metadata."""
    if order < 1:
        raise SizeGuardExceeded("order must be >= 1")
    if order > SIZE_GUARD:
        raise SizeGuardExceeded(f"order {order} exceeds size guard {SIZE_GUARD}")
    if len(table) != order or any(len(row) != order for row in table):
        raise SizeGuardExceeded("table shape does not match order")
    for x, row in enumerate(table):
        for y, v in enumerate(row):
            if not (0 <= v < order):
                raise SizeGuardExceeded(f"table[{x}][{y}] = {v} out of range")
    if labels is None:
        labels = [str(i) for i in range(order)]
    return _derive_metadata(order, table, labels, name)


def _perm_mul(p, q):
    """Apply p first, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def group_from_permutations(degree, generators, name=None):
    """Closure of permutation generators under products (BFS).

    Permutations are one-line images of {0..degree-1}; labels are the
    one-line tuples as text, so equal abstract subgroups of S_degree get
    equal label sets regardless of the generating set used.
    """
    identity = tuple(range(degree))
    gens = [tuple(p) for p in generators]
    for p in gens:
        if sorted(p) != list(range(degree)):
            raise SizeGuardExceeded(f"not a permutation of 0..{degree - 1}: {p}")
    elems = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                r = _perm_mul(p, q)
                if r not in elems:
                    elems.add(r)
                    nxt.append(r)
                    if len(elems) > SIZE_GUARD:
                        raise SizeGuardExceeded(
                            f"generated order exceeds size guard {SIZE_GUARD}"
                        )
        frontier = nxt
    ordered = sorted(elems)
    index = {p: i for i, p in enumerate(ordered)}
    n = len(ordered)
    table = [[index[_perm_mul(ordered[x], ordered[y])] for y in range(n)] for x in range(n)]
    labels = ["(" + ",".join(str(i + 1) for i in p) + ")" for p in ordered]
    return group_from_table(n, table, labels, name=name or f"perm{degree}")


def _cyclic(n):
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return group_from_table(n, table, [str(i) for i in range(n)], name=f"cyclic:{n}")


def _dihedral(n):
    # elements r^i s^j, id = (i, j), (r^i s^j)(r^k s^l) = r^(i + (-1)^j k) s^(j+l)
    elems = [(i, j) for j in range(2) for i in range(n)]
    index = {e: k for k, e in enumerate(elems)}
    table = []
    for (i, j) in elems:
        row = []
        for (k, l) in elems:
            row.append(index[((i + (k if j == 0 else -k)) % n, (j + l) % 2)])
        table.append(row)
    labels = [f"r{i}" if j == 0 else f"r{i}s" for (i, j) in elems]
    return group_from_table(2 * n, table, labels, name=f"dihedral:{n}")


def _symmetric(n):
    gens = []
    if n >= 2:
        gens.append(tuple([1, 0] + list(range(2, n))))
    if n >= 3:
        gens.append(tuple(list(range(1, n)) + [0]))
    return group_from_permutations(max(n, 1), gens, name=f"symmetric:{n}")


def _alternating(n):
    gens = []
    for i in range(n - 2):
        cyc = list(range(n))
        cyc[i], cyc[i + 1], cyc[i + 2] = cyc[i + 1], cyc[i + 2], cyc[i]
        gens.append(tuple(cyc))
    return group_from_permutations(max(n, 1), gens, name=f"alternating:{n}")


def _quaternion8():
    # 0:1, 1:-1, 2:i, 3:-i, 4:j, 5:-j, 6:k, 7:-k
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    sign = lambda a: a % 2
    base = lambda a: a - sign(a)

    def mul(a, b):
        s = sign(a) ^ sign(b)
        x, y = base(a), base(b)
        prod = {
            (0, 0): (0, 0),
            (0, 2): (2, 0), (0, 4): (4, 0), (0, 6): (6, 0),
            (2, 0): (2, 0), (4, 0): (4, 0), (6, 0): (6, 0),
            (2, 2): (0, 1), (4, 4): (0, 1), (6, 6): (0, 1),
            (2, 4): (6, 0), (4, 2): (6, 1),
            (4, 6): (2, 0), (6, 4): (2, 1),
            (6, 2): (4, 0), (2, 6): (4, 1),
        }[(x, y)]
        return prod[0] + (s ^ prod[1])

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    return group_from_table(8, table, labels, name="quaternion8")


def _product(groups):
    orders = [g.order for g in groups]
    n = 1
    for o in orders:
        n *= o
        if n > SIZE_GUARD:
            raise SizeGuardExceeded(f"product order exceeds size guard {SIZE_GUARD}")
    import itertools

    elems = list(itertools.product(*[range(o) for o in orders]))
    index = {e: k for k, e in enumerate(elems)}
    table = [
        [index[tuple(g.mul(x[i], y[i]) for i, g in enumerate(groups))] for y in elems]
        for x in elems
    ]
    labels = ["(" + ",".join(groups[i].labels[x[i]] for i in range(len(groups))) + ")" for x in elems]
    name = "product(" + ",".join(g.name for g in groups) + ")"
    return group_from_table(n, table, labels, name=name)


def _split_args(body):
    """Split 'a,b,c' at top-level commas, respecting parentheses."""
    parts, depth, cur = [], 0, ""
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


def preset_group(spec: str) -> FiniteGroup:
    """Build a named group: cyclic:n, dihedral:n, symmetric:n, alternating:n,
    quaternion8, or product(spec, spec, ...)."""
    spec = spec.strip()
    if spec.startswith("product(") and spec.endswith(")"):
        return _product([preset_group(s) for s in _split_args(spec[8:-1])])
    if spec == "quaternion8":
        return _quaternion8()
    if ":" in spec:
        kind, _, arg = spec.partition(":")
        try:
            n = int(arg)
        except ValueError:
            raise UnknownPreset(f"bad preset parameter: {spec!r}")
        if n < 1:
            raise UnknownPreset(f"preset parameter must be >= 1: {spec!r}")
        if kind == "cyclic":
            return _cyclic(n)
        if kind == "dihedral":
            return _dihedral(n)
        if kind == "symmetric":
            return _symmetric(n)
        if kind == "alternating":
            return _alternating(n)
    raise UnknownPreset(f"unknown preset: {spec!r}")


def subgroup_closure(G: FiniteGroup, S) -> frozenset:
    """Least subgroup of G containing S."""
    closed = {G.identity}
    frontier = [G.identity]
    for s in S:
        if s not in closed:
            closed.add(s)
            frontier.append(s)
    while frontier:
        nxt = []
        for x in frontier:
            for y in list(closed):
                for z in (G.mul(x, y), G.mul(y, x)):
                    if z not in closed:
                        closed.add(z)
                        nxt.append(z)
        frontier = nxt
    return frozenset(closed)


def _generating_sequence(G: FiniteGroup):
    """Small generating sequence found greedily."""
    gens = []
    have = subgroup_closure(G, gens)
    for x in G.elements():
        if x not in have:
            gens.append(x)
            have = subgroup_closure(G, gens)
            if len(have) == G.order:
                break
    return gens


@dataclass(frozen=True)
class GroupAutomorphism:
    """A table-preserving bijection of element ids."""

    permutation: tuple

    def __call__(self, x: int) -> int:
        return self.permutation[x]


def automorphisms(G: FiniteGroup) -> list:
    """All automorphisms of G, by backtracking over images of a generating set."""
    if G.order > AUT_GUARD:
        raise SizeGuardExceeded(
            f"order {G.order} exceeds automorphism guard {AUT_GUARD}"
        )
    gens = _generating_sequence(G)
    if not gens:
        return [GroupAutomorphism(tuple(range(G.order)))]

    # class sizes are automorphism-stable only as order profile; filter by order
    by_order: dict = {}
    for x in G.elements():
        by_order.setdefault(G.element_order[x], []).append(x)

    results = []

    def extend(idx, mapping):
        """mapping: partial dict id->image, closed under products of mapped gens."""
        if idx == len(gens):
            if len(mapping) == G.order:
                results.append(GroupAutomorphism(tuple(mapping[x] for x in G.elements())))
            return
        g = gens[idx]
        for img in by_order[G.element_order[g]]:
            new_map = dict(mapping)
            if not _extend_homomorphism(G, new_map, g, img):
                continue
            extend(idx + 1, new_map)

    extend(0, {G.identity: G.identity})
    return results


def _extend_homomorphism(G, mapping, g, img):
    """Extend mapping with g -> img, closing under multiplication.

    Returns False on any inconsistency or loss of injectivity.
    """
    if g in mapping:
        return mapping[g] == img
    mapping[g] = img
    frontier = [g]
    while frontier:
        x = frontier.pop()
        for y in list(mapping):
            for (p, q) in ((x, y), (y, x)):
                z = G.mul(p, q)
                w = G.mul(mapping[p], mapping[q])
                if z in mapping:
                    if mapping[z] != w:
                        return False
                else:
                    mapping[z] = w
                    frontier.append(z)
    vals = list(mapping.values())
    return len(set(vals)) == len(vals)


def group_to_json(G: FiniteGroup) -> dict:
    return {
        "name": G.name,
        "order": G.order,
        "elements": list(G.labels),
        "table": [list(row) for row in G.table],
    }


def group_from_json(data: dict) -> FiniteGroup:
    """Load a group from its JSON form (table or permutation generators)."""
    if "permutation_generators" in data:
        degree = data["degree"]
        gens = [[i - 1 for i in p] for p in data["permutation_generators"]]
        return group_from_permutations(degree, gens, name=data.get("name"))
    return group_from_table(
        data["order"],
        data["table"],
        labels=data.get("elements"),
        name=data.get("name", "group"),
    )
