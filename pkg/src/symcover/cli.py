"""Command-line surface.

Exit codes: 0 success, 1 domain error (structured message on stderr),
2 usage error (argparse).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections import Counter
from pathlib import Path

from . import cache as cache_mod
from .errors import SymcoverError
from .groups import FiniteGroup, group_from_json, preset_group
from .level import SpParams, is_symplectic, level_cover_data, sp_order
from .moves import braid_only_moveset, default_moveset, moveset_from_file
from .orbits import classify, orbit_of, stability_csv, stability_scan
from .signatures import dimension, enumerate_signatures, make_signature
from .vectors import GeneratingVector, count_vectors, enumerate_vectors, vector_validate


def load_group(spec: str) -> FiniteGroup:
    if spec.startswith("preset:"):
        return preset_group(spec[len("preset:"):])
    path = spec[len("file:"):] if spec.startswith("file:") else spec
    with open(path) as fh:
        return group_from_json(json.load(fh))


def load_moveset(spec: str):
    if spec == "default":
        return default_moveset()
    if spec == "braid-only":
        return braid_only_moveset()
    if spec.startswith("file:"):
        return moveset_from_file(spec[len("file:"):])
    return moveset_from_file(spec)


def parse_signature(G, text: str):
    """Parse 'gprime;m1,m2,...' (orders part may be empty)."""
    gp_text, _, orders_text = text.partition(";")
    gp = int(gp_text)
    orders = [int(t) for t in orders_text.split(",") if t.strip()]
    return make_signature(G, gp, orders)


def _emit(args, text: str):
    sys.stdout.write(text)


def cmd_group_info(args):
    G = load_group(args.group)
    hist = Counter(G.element_order)
    classes = sorted(len(c) for c in G.conjugacy_classes())
    info = {
        "name": G.name,
        "order": G.order,
        "element_order_histogram": {str(k): v for k, v in sorted(hist.items())},
        "conjugacy_class_sizes": classes,
        "hash": G.canonical_hash(),
    }
    if args.format == "table":
        lines = [f"group {G.name}: order {G.order}"]
        lines.append("element orders: " + ", ".join(f"{k}x{v}" for k, v in sorted(hist.items())))
        lines.append("class sizes: " + ", ".join(map(str, classes)))
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, json.dumps(info, sort_keys=True) + "\n")
    return 0


def cmd_signatures(args):
    G = load_group(args.group)
    rows = [
        {
            "gprime": s.quotient_genus,
            "orders": list(s.branch_orders),
            "d": s.d,
            "dimension": dimension(s),
        }
        for s in enumerate_signatures(G, args.genus)
    ]
    if args.format == "csv":
        lines = ["gprime,orders,d,dimension"]
        for r in rows:
            lines.append(
                f"{r['gprime']},{'.'.join(map(str, r['orders']))},{r['d']},{r['dimension']}"
            )
        _emit(args, "\n".join(lines) + "\n")
    elif args.format == "table":
        for r in rows:
            _emit(args, f"({r['gprime']}; {','.join(map(str, r['orders']))})  dim {r['dimension']}\n")
    else:
        _emit(args, json.dumps(rows, sort_keys=True) + "\n")
    return 0


def cmd_vectors(args):
    G = load_group(args.group)
    sig = parse_signature(G, args.signature)
    if args.action == "count":
        n = count_vectors(G, sig, limit=args.limit_vectors)
        _emit(args, json.dumps({"signature": str(sig), "count": n}) + "\n")
    else:
        out = [list(v.entries) for v in enumerate_vectors(G, sig, limit=args.limit_vectors)]
        _emit(args, json.dumps(out) + "\n")
    return 0


def cmd_orbit(args):
    G = load_group(args.group)
    sig = parse_signature(G, args.signature)
    entries = tuple(int(t) for t in args.vector.split(","))
    check = vector_validate(G, sig, entries)
    if not check:
        raise SymcoverError(f"invalid start vector: {check.reason}")
    moveset = load_moveset(args.moveset)
    orbit = orbit_of(G, GeneratingVector(sig, entries), moveset, budget=args.orbit_budget)
    _emit(
        args,
        json.dumps(
            {
                "signature": str(sig),
                "size": orbit.size,
                "canonical": list(orbit.canonical),
            }
        )
        + "\n",
    )
    return 0


def _classified_report(args, G, moveset):
    report = classify(
        G,
        args.genus,
        moveset,
        coarse_aut=args.coarse_aut,
        jobs=args.jobs,
        limit_vectors=args.limit_vectors,
        orbit_budget=args.orbit_budget,
    )
    if args.level is not None:
        for row in report.signatures:
            for orbit in row["orbits"]:
                orbit["level"] = level_cover_data(args.genus, args.level)
    return report


def cmd_classify(args):
    G = load_group(args.group)
    moveset = load_moveset(args.moveset)
    root = cache_mod.cache_root(args.cache_dir)
    key = cache_mod.cache_key(
        G.canonical_hash(),
        moveset.fingerprint(),
        command="classify",
        genus=args.genus,
        coarse_aut=args.coarse_aut,
        limit_vectors=args.limit_vectors,
        orbit_budget=args.orbit_budget,
        level=args.level,
    )
    hit = cache_mod.lookup(root, key)
    if hit is not None:
        sys.stdout.buffer.write(hit)
        return 0
    report = _classified_report(args, G, moveset)
    data = report.to_json().encode()
    cache_mod.store(root, key, data)
    sys.stdout.buffer.write(data)
    return 0


def cmd_stability(args):
    G = load_group(args.group)
    moveset = load_moveset(args.moveset)
    orders = [int(t) for t in args.orders.split(",") if t.strip()]
    lo, _, hi = args.gprime_range.partition(":")
    gprange = range(int(lo), int(hi) + 1)
    root = cache_mod.cache_root(args.cache_dir)
    key = cache_mod.cache_key(
        G.canonical_hash(),
        moveset.fingerprint(),
        command="stability",
        orders=orders,
        gprime_range=[gprange.start, gprange.stop],
        limit_vectors=args.limit_vectors,
    )
    hit = cache_mod.lookup(root, key)
    if hit is not None:
        sys.stdout.buffer.write(json.loads(hit)["csv"].encode())
        return 0
    rows = stability_scan(G, orders, gprange, moveset, limit_vectors=args.limit_vectors)
    csv_text = stability_csv(rows)
    cache_mod.store(root, key, json.dumps({"csv": csv_text}).encode())
    _emit(args, csv_text)
    return 0


def cmd_sp(args):
    if args.action == "order":
        _emit(args, f"{sp_order(args.genus, args.level)}\n")
        return 0
    with open(args.matrix) as fh:
        M = json.load(fh)
    genus = len(M) // 2
    ok = is_symplectic(M, SpParams(genus, args.level))
    _emit(args, json.dumps({"symplectic": ok}) + "\n")
    return 0


def cmd_cache(args):
    root = cache_mod.cache_root(args.cache_dir)
    n = cache_mod.purge(root)
    _emit(args, f"purged {n} entries\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="symcover",
        description="Classify finite group actions on compact Riemann surfaces",
    )
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group=True, fmt=True):
        if group:
            p.add_argument("--group", required=True, help="preset:NAME or a group JSON file")
        if fmt:
            p.add_argument("--format", choices=["json", "csv", "table"], default="json")

    p = sub.add_parser("group", help="group inspection")
    gsub = p.add_subparsers(dest="action", required=True)
    pi = gsub.add_parser("info")
    common(pi)
    pi.set_defaults(func=cmd_group_info)

    p = sub.add_parser("signatures", help="Riemann-Hurwitz signatures for a genus")
    common(p)
    p.add_argument("--genus", type=int, required=True)
    p.set_defaults(func=cmd_signatures)

    p = sub.add_parser("vectors", help="generating vectors of one signature")
    vsub = p.add_subparsers(dest="action", required=True)
    for action in ("count", "list"):
        pv = vsub.add_parser(action)
        common(pv)
        pv.add_argument("--signature", required=True, help="e.g. '0;2,2,2,2,2,2'")
        pv.add_argument("--limit-vectors", type=int, default=None)
        pv.set_defaults(func=cmd_vectors)

    p = sub.add_parser("orbit", help="orbit of one vector under a move set")
    common(p)
    p.add_argument("--signature", required=True)
    p.add_argument("--vector", required=True, help="comma-separated element ids")
    p.add_argument("--moveset", default="default")
    p.add_argument("--orbit-budget", type=int, default=None)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("classify", help="full orbit classification for a genus")
    common(p)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--moveset", default="default", help="default|braid-only|file:PATH")
    p.add_argument("--coarse-aut", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--limit-vectors", type=int, default=None)
    p.add_argument("--orbit-budget", type=int, default=None)
    p.add_argument("--level", type=int, default=None, help="attach level-m cover data")
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("stability", help="orbit counts for a branch multiset as g' grows")
    common(p, fmt=False)
    p.add_argument("--orders", required=True, help="branch multiset, e.g. '2,2'")
    p.add_argument("--gprime-range", required=True, help="e.g. '0:4'")
    p.add_argument("--moveset", default="default")
    p.add_argument("--limit-vectors", type=int, default=None)
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("sp", help="symplectic group over Z/m")
    ssub = p.add_subparsers(dest="action", required=True)
    po = ssub.add_parser("order")
    po.add_argument("--genus", type=int, required=True)
    po.add_argument("--level", type=int, required=True)
    po.set_defaults(func=cmd_sp)
    pc = ssub.add_parser("check")
    pc.add_argument("--matrix", required=True, help="JSON file: array of rows")
    pc.add_argument("--level", type=int, required=True)
    pc.set_defaults(func=cmd_sp)

    p = sub.add_parser("cache", help="result cache maintenance")
    csub = p.add_subparsers(dest="action", required=True)
    pp = csub.add_parser("purge")
    pp.add_argument("--cache-dir", default=None)
    pp.set_defaults(func=cmd_cache)

    return parser


def run_command(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is not None:
        random.seed(args.seed)
    try:
        return args.func(args)
    except SymcoverError as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
