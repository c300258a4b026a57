"""Generating vectors: tuples (a_1,b_1,...,a_g',b_g',c_1,...,c_d) over G.

A vector is valid for a signature when
  * the surface relation [a_1,b_1]...[a_g',b_g'] c_1...c_d = 1 holds,
  * the multiset of orders of the c-entries equals the branch multiset
    (braid moves permute branch points, so the arrangement is free),
  * the entries generate G.

Enumeration covers the full arrangement space of the branch multiset, in
lexicographic order of the id sequence, solving the last c-slot from the
relation.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import LimitExceeded
from .groups import FiniteGroup, subgroup_closure
from .signatures import Signature


@dataclass(frozen=True)
class GeneratingVector:
    signature: Signature
    entries: tuple  # (a_1, b_1, ..., a_g', b_g', c_1, ..., c_d)

    @property
    def handles(self) -> tuple:
        return self.entries[: 2 * self.signature.quotient_genus]

    @property
    def branches(self) -> tuple:
        return self.entries[2 * self.signature.quotient_genus :]


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    reason: Optional[str] = None

    def __bool__(self):
        return self.ok


def relation_product(G: FiniteGroup, sig: Signature, entries) -> int:
    """Evaluate [a_1,b_1]...[a_g',b_g'] c_1...c_d left to right."""
    p = G.identity
    gp = sig.quotient_genus
    for i in range(gp):
        p = G.mul(p, G.commutator(entries[2 * i], entries[2 * i + 1]))
    for j in range(sig.d):
        p = G.mul(p, entries[2 * gp + j])
    return p


def vector_validate(G: FiniteGroup, sig: Signature, entries) -> ValidationResult:
    """Check the three vector invariants; never raises on invalid input."""
    entries = tuple(entries)
    if len(entries) != sig.slots:
        return ValidationResult(False, f"expected {sig.slots} entries, got {len(entries)}")
    residue = relation_product(G, sig, entries)
    if residue != G.identity:
        return ValidationResult(
            False, f"surface relation fails: product is element {residue}"
        )
    got = Counter(G.element_order[c] for c in entries[2 * sig.quotient_genus :])
    want = Counter(sig.branch_orders)
    if got != want:
        for j, c in enumerate(entries[2 * sig.quotient_genus :], start=1):
            if got[G.element_order[c]] > want[G.element_order[c]]:
                return ValidationResult(
                    False,
                    f"branch entry c_{j} has order {G.element_order[c]}, "
                    f"multiset {tuple(sorted(want.elements()))} required",
                )
        return ValidationResult(False, "branch order multiset mismatch")
    if len(subgroup_closure(G, entries)) != G.order:
        return ValidationResult(False, "entries do not generate the group")
    return ValidationResult(True)


class _GenerationCache:
    """Memoized generation test keyed on the set of entries."""

    def __init__(self, G: FiniteGroup):
        self.G = G
        self.cache: dict = {}

    def generates(self, entries) -> bool:
        key = frozenset(entries)
        hit = self.cache.get(key)
        if hit is None:
            hit = len(subgroup_closure(self.G, key)) == self.G.order
            self.cache[key] = hit
        return hit


def enumerate_vectors(
    G: FiniteGroup, sig: Signature, limit: Optional[int] = None
) -> Iterator[GeneratingVector]:
    """Yield every valid vector exactly once, in lex order of the id tuple.

    The last branch entry is solved from the relation; when d = 0 the full
    relation is checked directly.  Raises LimitExceeded when a cap is hit.
    """
    gp, d, n = sig.quotient_genus, sig.d, G.order
    want = Counter(sig.branch_orders)
    by_order = {}
    for x in G.elements():
        by_order.setdefault(G.element_order[x], []).append(x)
    gen_cache = _GenerationCache(G)
    count = 0

    def emit(entries):
        nonlocal count
        count += 1
        if limit is not None and count > limit:
            raise LimitExceeded(limit)
        return GeneratingVector(sig, entries)

    def handle_blocks():
        """Stream (handle_tuple, running_product) in lex order."""
        def rec(i, prefix, prod):
            if i == gp:
                yield prefix, prod
                return
            for a in range(n):
                for b in range(n):
                    yield from rec(
                        i + 1, prefix + (a, b), G.mul(prod, G.commutator(a, b))
                    )
        yield from rec(0, (), G.identity)

    if d == 0:
        for prefix, prod in handle_blocks():
            if prod == G.identity and gen_cache.generates(prefix):
                yield emit(prefix)
        return

    for prefix, prod in handle_blocks():
        # DFS over c_1..c_{d-1}; c_d solved from the relation.
        out = []

        def rec(entries, prod, remaining, depth):
            if depth == d - 1:
                c_last = G.inv(prod)
                (m_left,) = tuple(remaining.elements())
                if G.element_order[c_last] == m_left:
                    full = entries + (c_last,)
                    if gen_cache.generates(full):
                        out.append(full)
                return
            candidates = []
            for m, k in remaining.items():
                if k > 0:
                    candidates.extend(by_order.get(m, ()))
            for c in sorted(candidates):
                m = G.element_order[c]
                remaining[m] -= 1
                rec(entries + (c,), G.mul(prod, c), remaining, depth + 1)
                remaining[m] += 1

        rec(prefix, prod, Counter(want), 0)
        for full in out:
            yield emit(full)


def count_vectors(G: FiniteGroup, sig: Signature, limit: Optional[int] = None) -> int:
    """Number of valid vectors, streaming (no storage)."""
    return sum(1 for _ in enumerate_vectors(G, sig, limit=limit))
