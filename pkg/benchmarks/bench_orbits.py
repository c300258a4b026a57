"""Compare the pure-Python and compiled orbit-partition kernels.

Usage: python3 benchmarks/bench_orbits.py [--repeat N]

Each case enumerates the generating vectors of one signature, then times
only the partition step (move application + union-find) under both
backends and checks the labels agree.
"""

from __future__ import annotations

import argparse
import time

from symcover._core import HAVE_COMPILED
from symcover.groups import preset_group
from symcover.moves import default_moveset
from symcover.orbits import partition_signature
from symcover.signatures import make_signature

CASES = [
    ("cyclic:2", 1, [2] * 10),
    ("cyclic:2", 2, [2] * 6),
    ("cyclic:3", 1, [3] * 6),
    ("symmetric:3", 0, [2] * 6 + [3, 3]),
    ("symmetric:3", 1, [2, 2, 3, 3]),
    ("dihedral:4", 0, [2, 2, 2, 2, 4, 4]),
    ("quaternion8", 1, [4, 4]),
]


def bench(repeat: int) -> None:
    print(f"{'case':<42} {'states':>8} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for spec, gprime, orders in CASES:
        G = preset_group(spec)
        sig = make_signature(G, gprime, orders)
        ms = default_moveset()
        times = {}
        labels = {}
        for backend in ("pure", "compiled") if HAVE_COMPILED else ("pure",):
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                states, lab = partition_signature(G, sig, ms, backend=backend)
                best = min(best, time.perf_counter() - t0)
            times[backend] = best
            labels[backend] = lab
        name = f"{spec} {sig}"
        n = len(states)
        if HAVE_COMPILED:
            assert labels["pure"] == labels["compiled"], name
            speedup = times["pure"] / times["compiled"]
            print(f"{name:<42} {n:>8} {times['pure']:>9.3f}s {times['compiled']:>9.3f}s {speedup:>7.1f}x")
        else:
            print(f"{name:<42} {n:>8} {times['pure']:>9.3f}s {'n/a':>10} {'n/a':>8}")
    if not HAVE_COMPILED:
        print("\ncompiled kernel not built; reinstall with a C compiler to compare")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="best-of-N timing")
    args = parser.parse_args()
    bench(args.repeat)


if __name__ == "__main__":
    main()
