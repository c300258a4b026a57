"""Level-m structure bookkeeping: the standard symplectic form, membership
and order of Sp_2g(Z/m), and per-component cover metadata.

The level subgroup of the mapping class group acts freely on Teichmueller
space exactly when m >= 3, so that is the validity predicate recorded with
every component; the ambient finite group for the cover data is
Sp_2g(Z/m), whose order is computed by a closed formula and cross-checked
by exhaustive enumeration in tests.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch

ENUM_BUDGET = 2**24
FREE_ACTION_MIN_LEVEL = 3


@dataclass(frozen=True)
class SpParams:
    genus: int
    level: int

    def __post_init__(self):
        if self.genus < 1:
            raise DimensionMismatch(f"genus {self.genus} < 1")
        if self.level < 2:
            raise DimensionMismatch(f"level {self.level} < 2")


def standard_form(genus: int) -> np.ndarray:
    """Block-diagonal J with g blocks [[0,1],[-1,0]], interleaved basis
    (a1, b1, ..., ag, bg)."""
    J = np.zeros((2 * genus, 2 * genus), dtype=np.int64)
    for i in range(genus):
        J[2 * i, 2 * i + 1] = 1
        J[2 * i + 1, 2 * i] = -1
    return J


def is_symplectic(M, params: SpParams) -> bool:
    """True iff M^T J M = J mod m."""
    M = np.asarray(M, dtype=np.int64)
    n = 2 * params.genus
    if M.shape != (n, n):
        raise DimensionMismatch(f"expected {n}x{n} matrix, got shape {M.shape}")
    J = standard_form(params.genus)
    m = params.level
    return bool(np.array_equal((M.T @ J @ M) % m, J % m))


def _sp_order_prime_power(genus: int, p: int, e: int) -> int:
    # |Sp_2g(Z/p)| = p^(g^2) * prod_{i=1..g} (p^(2i) - 1); each extra power
    # of p multiplies by p^(2g^2 + g)
    val = p ** (genus * genus)
    for i in range(1, genus + 1):
        val *= p ** (2 * i) - 1
    val *= p ** ((e - 1) * (2 * genus * genus + genus))
    return val


def sp_order(genus: int, level: int) -> int:
    """|Sp_2g(Z/m)|, multiplicative over the prime powers of m."""
    SpParams(genus, level)
    val = 1
    m = level
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            val *= _sp_order_prime_power(genus, p, e)
        p += 1
    if m > 1:
        val *= _sp_order_prime_power(genus, m, 1)
    return val


def enumerate_sp(genus: int, level: int, budget: int = ENUM_BUDGET):
    """Stream all symplectic matrices mod m, by brute force over all
    m^(2g)^2 candidates."""
    params = SpParams(genus, level)
    n = 2 * genus
    candidates = level ** (n * n)
    if candidates > budget:
        raise BudgetExceeded(
            f"{candidates} candidate matrices exceed budget {budget}"
        )
    for flat in itertools.product(range(level), repeat=n * n):
        M = np.asarray(flat, dtype=np.int64).reshape(n, n)
        if is_symplectic(M, params):
            yield M


def level_cover_data(total_genus: int, level: int) -> dict:
    """Cover metadata for one component: whether the level subgroup acts
    freely (m >= 3) and the order of the ambient group Sp_2g(Z/m)."""
    data = {
        "m": level,
        "m_valid": level >= FREE_ACTION_MIN_LEVEL,
        "ambient_order": sp_order(total_genus, level),
    }
    if not data["m_valid"]:
        data["reason"] = f"m >= {FREE_ACTION_MIN_LEVEL} required for a free level-subgroup action"
    return data
