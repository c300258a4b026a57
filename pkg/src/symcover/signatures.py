"""Riemann-Hurwitz arithmetic for quotient data (g'; m_1,...,m_d).

All arithmetic is exact (fractions.Fraction); integrality of the genus is
the admissibility test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import GenusBelowTwo, NegativeDimension, NonIntegralGenus
from .groups import FiniteGroup


@dataclass(frozen=True)
class Signature:
    """Quotient genus, sorted branch orders, and the total genus they induce."""

    quotient_genus: int
    branch_orders: tuple  # sorted ascending, each >= 2
    group_order: int
    total_genus: int

    @property
    def d(self) -> int:
        return len(self.branch_orders)

    @property
    def slots(self) -> int:
        return 2 * self.quotient_genus + self.d

    def key(self):
        return (self.quotient_genus, self.branch_orders)

    def __str__(self):
        orders = ",".join(str(m) for m in self.branch_orders)
        return f"({self.quotient_genus};{orders})"


def rh_genus(group_order: int, quotient_genus: int, branch_orders) -> int:
    """Total genus g from 2g - 2 = |G|(2g' - 2) + |G| * sum(1 - 1/m_j)."""
    for m in branch_orders:
        if m < 2:
            raise NonIntegralGenus(f"branch order {m} < 2")
        if group_order % m != 0:
            raise NonIntegralGenus(f"branch order {m} does not divide {group_order}")
    rhs = Fraction(group_order) * (2 * quotient_genus - 2)
    for m in branch_orders:
        rhs += Fraction(group_order) * (1 - Fraction(1, m))
    two_g = rhs + 2
    if two_g.denominator != 1 or two_g.numerator % 2 != 0:
        raise NonIntegralGenus(f"2g - 2 = {rhs} is not an even integer")
    g = two_g.numerator // 2
    if g < 2:
        raise GenusBelowTwo(f"total genus {g} < 2")
    return g


def dimension(sig: Signature) -> int:
    """Component dimension 3g' - 3 + d."""
    gp, d = sig.quotient_genus, sig.d
    val = 3 * gp - 3 + d
    if val < 0 or (gp == 1 and d == 0):
        raise NegativeDimension(f"quotient data ({gp}; d={d}) is rigid or ill-posed")
    return val


def make_signature(G: FiniteGroup, quotient_genus: int, branch_orders) -> Signature:
    """Validated signature; raises if Riemann-Hurwitz fails or g < 2."""
    orders = tuple(sorted(branch_orders))
    element_orders = set(G.element_order)
    for m in orders:
        if m not in element_orders:
            raise NonIntegralGenus(f"{m} is not an element order of {G.name}")
    g = rh_genus(G.order, quotient_genus, orders)
    return Signature(quotient_genus, orders, G.order, g)


def enumerate_signatures(G: FiniteGroup, genus: int) -> list:
    """All signatures with total genus = genus, branch orders drawn from the
    element orders of G, sorted by (g', branch multiset)."""
    if genus < 2:
        raise GenusBelowTwo(f"genus {genus} < 2")
    n = G.order
    usable = sorted({m for m in G.element_order if m >= 2})
    out = []
    target = Fraction(2 * genus - 2)
    gp = 0
    while Fraction(n) * (2 * gp - 2) <= target:
        # need sum(1 - 1/m_j) == remaining / |G|
        remaining = (target - Fraction(n) * (2 * gp - 2)) / n
        if remaining == 0:
            out.append(Signature(gp, (), n, genus))
        elif remaining > 0:
            stack = [((), remaining, 0)]
            while stack:
                prefix, rem, start = stack.pop()
                for i in range(start, len(usable)):
                    m = usable[i]
                    term = 1 - Fraction(1, m)
                    if term > rem:
                        continue
                    if term == rem:
                        out.append(Signature(gp, prefix + (m,), n, genus))
                    else:
                        stack.append((prefix + (m,), rem - term, i))
        gp += 1
    out.sort(key=lambda s: s.key())
    return out
