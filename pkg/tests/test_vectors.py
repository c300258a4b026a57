import pytest

from oracles import brute_force_vectors
from symcover.errors import LimitExceeded
from symcover.groups import preset_group
from symcover.signatures import make_signature
from symcover.vectors import count_vectors, enumerate_vectors, vector_validate


def test_validate_ok_z2():
    G = preset_group("cyclic:2")
    sig = make_signature(G, 0, [2] * 6)
    assert vector_validate(G, sig, (1,) * 6)


def test_validate_relation_failure_z3():
    G = preset_group("cyclic:3")
    sig = make_signature(G, 0, [3, 3, 3, 3])
    res = vector_validate(G, sig, (1, 1, 1, 1))
    assert not res and "relation" in res.reason


def test_validate_z4_mixed_orders():
    G = preset_group("cyclic:4")
    sig = make_signature(G, 0, [2, 2, 4, 4])
    assert vector_validate(G, sig, (1, 3, 2, 2))
    res = vector_validate(G, sig, (1, 1, 2, 0))
    assert not res


def test_validate_generation_failure():
    G = preset_group("cyclic:4")
    sig = make_signature(G, 0, [2, 2, 2, 2, 2, 2])
    res = vector_validate(G, sig, (2,) * 6)
    assert not res and "generate" in res.reason


def test_enumerate_counts():
    Z2 = preset_group("cyclic:2")
    Z3 = preset_group("cyclic:3")
    assert count_vectors(Z2, make_signature(Z2, 0, [2] * 6)) == 1
    assert count_vectors(Z3, make_signature(Z3, 0, [3] * 4)) == 6
    assert count_vectors(Z3, make_signature(Z3, 1, [3])) == 0
    assert count_vectors(Z2, make_signature(Z2, 1, [2, 2])) == 4
    assert count_vectors(Z2, make_signature(Z2, 4, [])) == 255


def test_enumerate_lex_order_unique():
    G = preset_group("cyclic:3")
    sig = make_signature(G, 0, [3] * 4)
    vs = [v.entries for v in enumerate_vectors(G, sig)]
    assert vs == sorted(set(vs))


def test_enumerate_matches_brute_force():
    cases = [
        ("cyclic:4", 0, [2, 2, 4, 4]),
        ("cyclic:2", 1, [2, 2]),
        ("symmetric:3", 0, [2, 2, 3, 3]),
        ("cyclic:3", 0, [3, 3, 3, 3]),
    ]
    for spec, gp, orders in cases:
        G = preset_group(spec)
        sig = make_signature(G, gp, orders)
        got = [v.entries for v in enumerate_vectors(G, sig)]
        assert got == sorted(brute_force_vectors(G, sig))


def test_enumerate_validates_all():
    G = preset_group("symmetric:3")
    sig = make_signature(G, 0, [2, 2, 3, 3])
    for v in enumerate_vectors(G, sig):
        assert vector_validate(G, sig, v.entries)


def test_limit_cap():
    G = preset_group("cyclic:3")
    sig = make_signature(G, 0, [3] * 4)
    with pytest.raises(LimitExceeded):
        list(enumerate_vectors(G, sig, limit=3))
