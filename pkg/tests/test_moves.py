import json

import pytest

from symcover.errors import IndexOutOfRange, MoveValidationFailed
from symcover.groups import preset_group
from symcover.moves import (
    MoveSet,
    apply_move,
    braid_move,
    braid_only_moveset,
    conjugation_move,
    coupling_move_spec,
    default_moveset,
    moveset_from_file,
    register_move,
    twist_move,
)
from symcover.signatures import enumerate_signatures, make_signature
from symcover.vectors import GeneratingVector, enumerate_vectors, vector_validate


def small_battery():
    for spec in ["cyclic:2", "cyclic:3", "cyclic:4", "product(cyclic:2,cyclic:2)", "symmetric:3"]:
        G = preset_group(spec)
        for g in range(2, 6):
            for sig in enumerate_signatures(G, g):
                yield G, sig


def capped_vectors(G, sig, cap):
    from symcover.errors import LimitExceeded

    out = []
    try:
        for v in enumerate_vectors(G, sig, limit=cap):
            out.append(v)
    except LimitExceeded:
        pass
    return out


def test_braid_abelian_is_transposition():
    G = preset_group("cyclic:4")
    sig = make_signature(G, 0, [4, 4, 2, 2])
    v = GeneratingVector(sig, (1, 3, 2, 2))
    out = apply_move(G, v, braid_move(sig, 1, +1))
    assert out.entries == (3, 1, 2, 2)


def test_braid_s3_example():
    G = preset_group("symmetric:3")
    label = {lab: i for i, lab in enumerate(G.labels)}
    t12, t13, t23 = label["(2,1,3)"], label["(3,2,1)"], label["(1,3,2)"]
    sig = make_signature(G, 0, [2, 2, 2, 2, 3, 3])
    # any valid completion works; only the first two slots matter for the check
    three = [x for x in G.elements() if G.element_order[x] == 3]
    found = None
    for x in three:
        for y in three:
            cand = (t12, t13, t23, t23, x, y)
            if vector_validate(G, sig, cand):
                found = cand
                break
        if found:
            break
    out = apply_move(G, GeneratingVector(sig, found), braid_move(sig, 1, +1))
    assert out.entries[0] == t23  # (1 2)(1 3)(1 2) = (2 3), "apply left first"
    assert out.entries[1] == t12


def test_twist_z2_example():
    G = preset_group("cyclic:2")
    sig = make_signature(G, 1, [2, 2])
    v = GeneratingVector(sig, (1, 0, 1, 1))
    out = apply_move(G, v, twist_move(sig, "t", 1, +1))
    assert out.entries == (1, 1, 1, 1)


def test_moves_preserve_validity_exhaustive():
    for G, sig in small_battery():
        moves = default_moveset().instantiate(G, sig, with_inverses=True)
        for v in capped_vectors(G, sig, 2000):
            for mv in moves:
                image = apply_move(G, v, mv)
                assert vector_validate(G, sig, image.entries), (
                    G.name,
                    str(sig),
                    mv.name,
                    v.entries,
                )


def test_inverse_pairs_compose_to_identity():
    for G, sig in small_battery():
        moves = {m.name: m for m in default_moveset().instantiate(G, sig)}
        vectors = capped_vectors(G, sig, 500)
        for mv in moves.values():
            inv = moves[mv.inverse_name]
            for v in vectors:
                assert apply_move(G, apply_move(G, v, mv), inv).entries == v.entries


def test_braid_relation():
    for G, sig in small_battery():
        if sig.d < 3:
            continue
        b1 = braid_move(sig, 1, +1)
        b2 = braid_move(sig, 2, +1)
        for v in capped_vectors(G, sig, 500):
            lhs = apply_move(G, apply_move(G, apply_move(G, v, b1), b2), b1)
            rhs = apply_move(G, apply_move(G, apply_move(G, v, b2), b1), b2)
            assert lhs.entries == rhs.entries


def test_commutator_word_identities():
    # [x, y*x] = [x, y] and [x*y, y] = [x, y] in every group up to order 24
    for spec in ["cyclic:8", "dihedral:6", "symmetric:4", "quaternion8"]:
        G = preset_group(spec)
        for x in G.elements():
            for y in G.elements():
                base = G.commutator(x, y)
                assert G.commutator(x, G.mul(y, x)) == base
                assert G.commutator(G.mul(x, y), y) == base


def test_register_braid_word_map_idempotent():
    spec = {"name": "braid1", "outputs": {"c1": "c1 * c2 * c1^-1", "c2": "c1"}}
    ms = register_move(default_moveset(), spec)
    G = preset_group("cyclic:4")
    sig = make_signature(G, 0, [4, 4, 2, 2])
    reg = [m for m in ms.instantiate(G, sig) if m.name == "braid1"][0]
    builtin = braid_move(sig, 1, +1)
    for v in enumerate_vectors(G, sig):
        assert reg.apply(G, v.entries) == builtin.apply(G, v.entries)


def test_register_rejects_order_breaking_move():
    with pytest.raises(MoveValidationFailed) as exc:
        register_move(default_moveset(), {"name": "bad", "outputs": {"c1": "c1 * c2"}})
    assert exc.value.counterexample is not None


def test_register_rejects_relation_breaking_move():
    with pytest.raises(MoveValidationFailed) as exc:
        register_move(default_moveset(), {"name": "bad", "outputs": {"a1": "a1 * c1"}})
    assert exc.value.counterexample is not None


def test_coupling_move_accepted():
    ms = register_move(default_moveset(), coupling_move_spec())
    assert ms.provenance == "default+registered"
    assert len(ms.registered) == 1


def test_registered_inverse_roundtrip():
    ms = register_move(default_moveset(), coupling_move_spec())
    G = preset_group("symmetric:3")
    sig = make_signature(G, 1, [2, 2])
    moves = {m.name: m for m in ms.instantiate(G, sig)}
    fwd = moves["couple(a1,c1)"]
    inv = moves["couple(a1,c1)^-1"]
    for v in enumerate_vectors(G, sig):
        assert apply_move(G, apply_move(G, v, fwd), inv).entries == v.entries


def test_conjugation_move():
    G = preset_group("symmetric:3")
    sig = make_signature(G, 0, [2, 2, 3, 3])
    v = next(iter(enumerate_vectors(G, sig)))
    for h in G.elements():
        if h == G.identity:
            continue
        out = conjugation_move(G, sig, h).apply(G, v.entries)
        assert out == tuple(G.conj(h, x) for x in v.entries)


def test_move_index_out_of_range():
    G = preset_group("cyclic:2")
    sig = make_signature(G, 1, [2, 2])
    with pytest.raises(IndexOutOfRange):
        braid_move(sig, 2, +1)
    with pytest.raises(IndexOutOfRange):
        twist_move(sig, "t", 2, +1)


def test_moveset_file_roundtrip(tmp_path):
    path = tmp_path / "moves.json"
    path.write_text(json.dumps([coupling_move_spec()]))
    ms = moveset_from_file(path)
    assert ms.provenance == "default+registered"
    assert ms.fingerprint() != default_moveset().fingerprint()
