"""End-to-end acceptance checks.

Each test covers one numbered criterion and prints a single pass line on
success (pytest -v adds the PASSED/FAILED verdict per test as well).
Derived values are cross-checked against the independent oracles in
tests/oracles.py before the engine result is trusted.
"""

import itertools
import json
import time

from oracles import (
    brute_force_vectors,
    engine_partition_as_sets,
    multiset_partition,
    naive_partition,
)
from symcover.errors import LimitExceeded
from symcover.groups import preset_group
from symcover.moves import (
    braid_only_moveset,
    coupling_move_spec,
    default_moveset,
    register_move,
)
from symcover.level import enumerate_sp, sp_order
from symcover.orbits import classify, partition_signature
from symcover.signatures import dimension, enumerate_signatures, rh_genus
from symcover.vectors import count_vectors, vector_validate


def _passed(n, text):
    print(f"[criterion {n:02d}] PASS - {text}")


def _battery_order_le_12_genus_le_4(max_vectors=10**5):
    """Criterion-5 battery: every signature with <= 10^5 vectors over
    groups of order <= 12 at genus <= 4."""
    presets = [
        "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6",
        "product(cyclic:2,cyclic:2)", "symmetric:3", "dihedral:4",
        "quaternion8", "dihedral:5", "alternating:4", "dihedral:6",
    ]
    for spec in presets:
        G = preset_group(spec)
        for g in range(2, 5):
            for sig in enumerate_signatures(G, g):
                try:
                    count_vectors(G, sig, limit=max_vectors)
                except LimitExceeded:
                    continue
                yield G, sig


def test_criterion_01_signature_round_trip():
    t0 = time.perf_counter()
    for spec in ["cyclic:2", "cyclic:3", "cyclic:4",
                 "product(cyclic:2,cyclic:2)", "symmetric:3",
                 "dihedral:4", "quaternion8"]:
        G = preset_group(spec)
        orders = set(G.element_order)
        for g in range(2, 7):
            for sig in enumerate_signatures(G, g):
                # oracle: direct Riemann-Hurwitz arithmetic
                assert rh_genus(G.order, sig.quotient_genus, sig.branch_orders) == g
                assert all(m in orders for m in sig.branch_orders)
    Z2 = preset_group("cyclic:2")
    sigs = enumerate_signatures(Z2, 7)
    assert len(sigs) == 5
    assert sorted(s.quotient_genus for s in sigs) == [0, 1, 2, 3, 4]
    assert all(s.d == 16 - 4 * s.quotient_genus for s in sigs)
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0, f"took {elapsed:.2f}s"
    _passed(1, f"RH round trip on 7 groups x g=2..6; Z/2 g=7 has 5 signatures ({elapsed:.2f}s)")


def test_criterion_02_hyperelliptic_uniqueness():
    t0 = time.perf_counter()
    Z2 = preset_group("cyclic:2")
    for g in range(2, 7):
        report = classify(Z2, g)
        row = next(
            r for r in report.signatures
            if r["gprime"] == 0 and tuple(r["orders"]) == (2,) * (2 * g + 2)
        )
        assert row["vectors"] == 1
        assert len(row["orbits"]) == 1
        assert row["exact"]
        assert row["dimension"] == 2 * g - 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0, f"took {elapsed:.2f}s"
    _passed(2, f"(0;2^(2g+2)) unique exact orbit of dimension 2g-1 for g=2..6 ({elapsed:.2f}s)")


def test_criterion_03_z3_genus_2():
    t0 = time.perf_counter()
    Z3 = preset_group("cyclic:3")
    report = classify(Z3, 2)
    rows = {(r["gprime"], tuple(r["orders"])): r for r in report.signatures}
    row = rows[(0, (3, 3, 3, 3))]
    # oracle 1: exhaustive filter of all tuples in (Z/3)^4
    sig = next(s for s in enumerate_signatures(Z3, 2) if s.quotient_genus == 0)
    brute = sorted(
        t for t in itertools.product(range(3), repeat=4)
        if vector_validate(Z3, sig, t)
    )
    assert len(brute) == 6 and row["vectors"] == 6
    # oracle 2: naive BFS partition
    assert naive_partition(Z3, sig, default_moveset()) == {frozenset(brute)}
    assert len(row["orbits"]) == 1 and row["exact"] and row["dimension"] == 1
    assert rows[(1, (3,))]["vectors"] == 0
    assert report.total == 1 and report.exact
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0, f"took {elapsed:.2f}s"
    _passed(3, f"Z/3 genus 2: one exact component, both oracles agree ({elapsed:.2f}s)")


def test_criterion_04_abelian_braid_theorem():
    checked = 0
    for n in range(2, 9):
        G = preset_group(f"cyclic:{n}")
        for g in range(2, 7):
            for sig in enumerate_signatures(G, g):
                if sig.quotient_genus != 0:
                    continue
                states, labels = partition_signature(G, sig, default_moveset())
                engine = engine_partition_as_sets(states, labels)
                assert engine == multiset_partition(G, sig), (n, g, str(sig))
                checked += 1
    _passed(4, f"orbit partition == entry-multiset partition on {checked} abelian g'=0 signatures")


def test_criterion_05_engine_vs_oracle():
    checked = 0
    for G, sig in _battery_order_le_12_genus_le_4():
        for ms in (braid_only_moveset(), default_moveset()):
            states, labels = partition_signature(G, sig, ms)
            assert engine_partition_as_sets(states, labels) == naive_partition(G, sig, ms), (
                G.name, str(sig), ms.provenance,
            )
            checked += 1
    _passed(5, f"union-find engine == naive BFS oracle on {checked} (signature, moveset) cases")


def test_criterion_06_refinement_monotonicity():
    coupled = register_move(default_moveset(), coupling_move_spec())
    movesets = [braid_only_moveset(), default_moveset(), coupled]
    for G, sig in _battery_order_le_12_genus_le_4():
        parts = []
        for ms in movesets:
            states, labels = partition_signature(G, sig, ms)
            parts.append(engine_partition_as_sets(states, labels))
        braid, default, couple = parts
        assert len(couple) <= len(default) <= len(braid)
        for fine, coarse in [(braid, default), (default, couple)]:
            for orbit in fine:
                assert any(orbit <= big for big in coarse), (G.name, str(sig))
    _passed(6, "count(default+registered) <= count(default) <= count(braid-only), union-refinement holds")


def test_criterion_07_z2_genus_2_ledger():
    Z2 = preset_group("cyclic:2")
    report = classify(Z2, 2)
    rows = {(r["gprime"], tuple(r["orders"])): r for r in report.signatures}
    r0 = rows[(0, (2,) * 6)]
    assert len(r0["orbits"]) == 1 and r0["exact"]
    r1 = rows[(1, (2, 2))]
    assert r1["vectors"] == 4 and len(r1["orbits"]) == 2 and not r1["exact"]
    assert report.total == 3 and not report.exact
    # oracle: exhaustive BFS over the full 5-vector state space
    sigs = enumerate_signatures(Z2, 2)
    assert sum(len(brute_force_vectors(Z2, s)) for s in sigs) == 5
    assert sum(len(naive_partition(Z2, s, default_moveset())) for s in sigs) == 3
    # registering the handle-branch coupling move merges the two (1;2,2) orbits
    coupled = register_move(default_moveset(), coupling_move_spec())
    report2 = classify(Z2, 2, coupled)
    rows2 = {(r["gprime"], tuple(r["orders"])): r for r in report2.signatures}
    assert len(rows2[(1, (2, 2))]["orbits"]) == 1
    assert report2.total == 2
    _passed(7, "Z/2 genus 2: total 3 with default moves, 2 after the coupling move registers")


def test_criterion_08_symplectic_orders():
    t0 = time.perf_counter()
    expected = {(1, 2): 6, (1, 3): 24, (2, 2): 720, (1, 4): 48, (1, 6): 144}
    for (g, m), want in expected.items():
        assert sp_order(g, m) == want
        # oracle: exhaustive enumeration of matrices mod m
        assert sum(1 for _ in enumerate_sp(g, m)) == want
    assert sp_order(1, 6) == sp_order(1, 2) * sp_order(1, 3)
    assert sp_order(2, 6) == sp_order(2, 2) * sp_order(2, 3)
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0, f"took {elapsed:.2f}s"
    _passed(8, f"five Sp orders match exhaustive enumeration; multiplicative at m=2*3 ({elapsed:.2f}s)")


def test_criterion_09_move_soundness():
    from symcover.errors import MoveValidationFailed
    from symcover.moves import apply_move, braid_move
    from symcover.vectors import enumerate_vectors

    for G, sig in _battery_order_le_12_genus_le_4():
        vectors = list(enumerate_vectors(G, sig))
        moves = {m.name: m for m in default_moveset().instantiate(G, sig)}
        for v in vectors:
            for mv in moves.values():
                image = apply_move(G, v, mv)
                assert vector_validate(G, sig, image.entries), (G.name, str(sig), mv.name)
                inv = moves[mv.inverse_name]
                assert apply_move(G, image, inv).entries == v.entries
        if sig.d >= 3:
            b1, b2 = braid_move(sig, 1, +1), braid_move(sig, 2, +1)
            for v in vectors:
                lhs = apply_move(G, apply_move(G, apply_move(G, v, b1), b2), b1)
                rhs = apply_move(G, apply_move(G, apply_move(G, v, b2), b1), b2)
                assert lhs.entries == rhs.entries
    for bad in ({"name": "bad", "outputs": {"c1": "c1 * c2"}},
                {"name": "bad", "outputs": {"a1": "a1 * c1"}}):
        try:
            register_move(default_moveset(), bad)
        except MoveValidationFailed as exc:
            assert exc.counterexample is not None
        else:
            raise AssertionError(f"{bad} should have been rejected")
    _passed(9, "built-in moves preserve validity, invert, satisfy the braid relation; bad moves rejected")


def test_criterion_10_determinism(tmp_path, capsys):
    from symcover.cli import run_command

    S3 = preset_group("symmetric:3")
    j1 = classify(S3, 3, jobs=1).to_json()
    j8 = classify(S3, 3, jobs=8).to_json()
    assert j1 == j8

    args = ["classify", "--group", "preset:symmetric:3", "--genus", "3",
            "--cache-dir", str(tmp_path)]
    assert run_command(args + ["--jobs", "1"]) == 0
    first = capsys.readouterr().out
    assert run_command(args + ["--jobs", "8"]) == 0
    second = capsys.readouterr().out
    assert first == second
    # prove the second run came from the cache: mutate the single stored
    # entry and observe the mutation in the output
    (entry,) = tmp_path.rglob("*.json")
    entry.write_bytes(first.replace("symmetric", "SENTINEL").encode())
    assert run_command(args) == 0
    assert "SENTINEL" in capsys.readouterr().out
    _passed(10, "jobs=1 and jobs=8 reports byte-identical; repeat run served verbatim from cache")
