"""Orbit partition of generating vectors: one orbit = one topological type
= one connected component of the moduli space of genus-g curves with
G-action.

The engine enumerates all valid vectors of a signature (over the full
arrangement space of the branch multiset), generates one edge per (state,
move) pair, and unions them; the kernel lives in symcover._core.  A
signature classified with quotient genus >= 1 under the shipped move set is
flagged as an upper-bound refinement, since those moves are not asserted to
generate the whole mapping-class action there.
"""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import _core
from .errors import (
    GenusBelowTwo,
    LimitExceeded,
    NegativeDimension,
    NonIntegralGenus,
    OrbitBudgetExceeded,
)
from .groups import FiniteGroup, automorphisms
from .moves import MoveSet, apply_move, default_moveset
from .signatures import Signature, dimension, enumerate_signatures, make_signature
from .vectors import GeneratingVector, enumerate_vectors

SCHEMA_VERSION = 1

log = logging.getLogger("symcover")

FLAG_EXACT = "exact"
FLAG_UPPER_BOUND = "upper-bound-refinement"


@dataclass(frozen=True)
class TopologicalTypeRecord:
    signature: Signature
    representative: tuple
    orbit_size: int
    dimension: int
    completeness: str
    moveset_tag: str


@dataclass
class ClassificationReport:
    group_name: str
    group_hash: str
    genus: int
    moveset_tag: str
    signatures: list
    total: int
    exact: bool
    coarse_total: Optional[int] = None

    def to_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "group": {"name": self.group_name, "hash": self.group_hash},
            "genus": self.genus,
            "moveset": self.moveset_tag,
            "signatures": self.signatures,
            "total": self.total,
            "exact": self.exact,
        }
        if self.coarse_total is not None:
            out["coarse_total"] = self.coarse_total
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"


@dataclass
class Orbit:
    size: int
    canonical: tuple
    members: frozenset


def _signature_exact(sig: Signature, n_states: int) -> bool:
    # conjugation + braids generate the full action for g' = 0; a signature
    # with no vectors is vacuously exact
    return sig.quotient_genus == 0 or n_states == 0


def orbit_of(G: FiniteGroup, v: GeneratingVector, moveset: MoveSet, budget=None) -> Orbit:
    """Breadth-first closure of {v} under all moves and their inverses."""
    sig = v.signature
    moves = moveset.instantiate(G, sig, with_inverses=True)
    seen = {v.entries}
    frontier = [v.entries]
    while frontier:
        nxt = []
        for entries in frontier:
            gv = GeneratingVector(sig, entries)
            for mv in moves:
                image = apply_move(G, gv, mv).entries
                if image not in seen:
                    seen.add(image)
                    if budget is not None and len(seen) > budget:
                        raise OrbitBudgetExceeded(budget)
                    nxt.append(image)
        frontier = nxt
    return Orbit(size=len(seen), canonical=min(seen), members=frozenset(seen))


def partition_signature(G, sig, moveset, limit_vectors=None, backend=None):
    """(states, labels) for one signature; states are lex-sorted entry
    tuples, labels are minimal member indices per component."""
    states = [v.entries for v in enumerate_vectors(G, sig, limit=limit_vectors)]
    moves = moveset.instantiate(G, sig, with_inverses=False)
    programs = [mv.outputs for mv in moves]
    labels = _core.partition(G, states, programs, backend=backend)
    return states, labels


def _orbits_from_labels(states, labels):
    groups: dict = {}
    for i, root in enumerate(labels):
        groups.setdefault(root, []).append(i)
    orbits = []
    for root in sorted(groups):
        members = groups[root]
        orbits.append(Orbit(len(members), states[root], frozenset(states[i] for i in members)))
    return orbits


def _classify_signature(G, sig, moveset, options):
    t0 = time.perf_counter()
    row = {
        "gprime": sig.quotient_genus,
        "orders": list(sig.branch_orders),
        "dimension": dimension(sig),
    }
    try:
        states, labels = partition_signature(
            G,
            sig,
            moveset,
            limit_vectors=options.get("limit_vectors"),
            backend=options.get("backend"),
        )
    except LimitExceeded as exc:
        row.update(
            {
                "vectors": None,
                "orbits": [],
                "exact": False,
                "partial": f"vector enumeration capped at {exc.limit}",
            }
        )
        return row, None, None
    budget = options.get("orbit_budget")
    if budget is not None and len(states) > budget:
        row.update(
            {
                "vectors": len(states),
                "orbits": [],
                "exact": False,
                "partial": f"orbit budget {budget} below state count {len(states)}",
            }
        )
        return row, None, None
    orbits = _orbits_from_labels(states, labels)
    exact = _signature_exact(sig, len(states))
    row.update(
        {
            "vectors": len(states),
            "orbits": [
                {
                    "size": o.size,
                    "representative": list(o.canonical),
                    "exact": exact,
                }
                for o in orbits
            ],
            "exact": exact,
        }
    )
    log.info(
        "signature %s: %d vectors, %d orbits (%.3fs)",
        sig,
        len(states),
        len(orbits),
        time.perf_counter() - t0,
    )
    return row, states, labels


def _coarsen_by_automorphisms(G, states, labels):
    """Number of orbit classes after merging orbits related by Aut(G)."""
    index = {s: i for i, s in enumerate(states)}
    auts = automorphisms(G)
    roots = sorted(set(labels))
    parent = {r: r for r in roots}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for aut in auts:
        for r in roots:
            image = tuple(aut(x) for x in states[r])
            r2 = labels[index[image]]
            a, b = find(r), find(r2)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return len({find(r) for r in roots})


def classify(
    G: FiniteGroup,
    genus: int,
    moveset: Optional[MoveSet] = None,
    coarse_aut: bool = False,
    jobs: int = 1,
    limit_vectors: Optional[int] = None,
    orbit_budget: Optional[int] = None,
    backend: Optional[str] = None,
) -> ClassificationReport:
    """Partition every signature's vectors into orbits; one report row per
    signature, deterministic for any worker count."""
    moveset = moveset or default_moveset()
    sigs = enumerate_signatures(G, genus)
    options = {
        "limit_vectors": limit_vectors,
        "orbit_budget": orbit_budget,
        "backend": backend,
    }

    def work(sig):
        return _classify_signature(G, sig, moveset, options)

    if jobs > 1 and len(sigs) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, sigs))
    else:
        results = [work(sig) for sig in sigs]

    rows = []
    total = 0
    coarse_total = 0
    exact = True
    for (row, states, labels), sig in zip(results, sigs):
        if row.get("partial"):
            exact = False
        else:
            total += len(row["orbits"])
            exact = exact and row["exact"]
            if coarse_aut and states:
                row["coarse_orbits"] = _coarsen_by_automorphisms(G, states, labels)
                coarse_total += row["coarse_orbits"]
        rows.append(row)
    report = ClassificationReport(
        group_name=G.name,
        group_hash=G.canonical_hash(),
        genus=genus,
        moveset_tag=moveset.provenance,
        signatures=rows,
        total=total,
        exact=exact,
        coarse_total=coarse_total if coarse_aut else None,
    )
    return report


def component_count(G, genus, moveset=None, **kwargs):
    """Total orbit count across signatures plus the aggregated exactness flag."""
    report = classify(G, genus, moveset, **kwargs)
    return report.total, report.exact


def records_from_report(G, report: ClassificationReport) -> list:
    out = []
    for row in report.signatures:
        sig = make_signature(G, row["gprime"], row["orders"])
        for orbit in row["orbits"]:
            out.append(
                TopologicalTypeRecord(
                    signature=sig,
                    representative=tuple(orbit["representative"]),
                    orbit_size=orbit["size"],
                    dimension=row["dimension"],
                    completeness=FLAG_EXACT if row["exact"] else FLAG_UPPER_BOUND,
                    moveset_tag=report.moveset_tag,
                )
            )
    return out


def stability_scan(
    G: FiniteGroup,
    branch_multiset,
    gprime_range,
    moveset: Optional[MoveSet] = None,
    limit_vectors: Optional[int] = None,
    backend: Optional[str] = None,
) -> list:
    """Orbit counts for a fixed branch multiset as the quotient genus grows.

    Rows: (gprime, vectors, orbits, exact); quotient data that fails
    Riemann-Hurwitz (total genus < 2 or non-integral) is skipped.
    """
    moveset = moveset or default_moveset()
    rows = []
    for gp in gprime_range:
        try:
            sig = make_signature(G, gp, branch_multiset)
            dimension(sig)
        except (NonIntegralGenus, GenusBelowTwo, NegativeDimension):
            continue
        states, labels = partition_signature(
            G, sig, moveset, limit_vectors=limit_vectors, backend=backend
        )
        n_orbits = len(set(labels))
        rows.append(
            {
                "gprime": gp,
                "vectors": len(states),
                "orbits": n_orbits,
                "exact": _signature_exact(sig, len(states)),
            }
        )
    return rows


def stability_csv(rows) -> str:
    lines = ["gprime,vectors,orbits,exact"]
    for r in rows:
        lines.append(f"{r['gprime']},{r['vectors']},{r['orbits']},{str(r['exact']).lower()}")
    return "\n".join(lines) + "\n"
