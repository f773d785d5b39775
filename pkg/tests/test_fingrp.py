import random

import pytest

from parcoh.exactla import Mat
from parcoh.fingrp import (center, find_conjugator, find_conjugators, group_closure,
                           group_from_json, group_to_json, subgroup_generates)
from parcoh.scenarios import build_klein_rep

from conftest import W


def test_cyclic_three():
    G = group_closure([Mat([[W]])], 10)
    assert G.order == 3
    assert sorted(G.labels().values()) == ["1a0", "1a1", "1a2"]


def test_bound_exceeded():
    with pytest.raises(OverflowError):
        group_closure([Mat([[W]])], 2)


def test_singular_generator():
    with pytest.raises(ValueError):
        group_closure([Mat([[0, 1], [0, 0]])], 10)


def test_klein_orders(klein):
    S, T, Z = build_klein_rep(verify=False)
    assert group_closure([S, T], 200).order == 168
    assert klein.order == 504
    assert len(klein.derived) == 168
    assert klein.order // len(klein.derived) == 3


def test_center_is_scalars(klein):
    mats = [klein.matrix(a) for a in center(klein)]
    assert len(mats) == 3 and all(m.is_scalar() for m in mats)
    z = klein.central
    assert klein.matrix(z).is_scalar()
    assert klein.class_label(z) in ("1a1", "1a2")


def test_class_data(klein):
    sizes = [len(c) for c in klein.classes]
    assert sum(sizes) == klein.order
    assert all(klein.order % s == 0 for s in sizes)
    for lab, size in (("2a0", 21), ("3a1", 56), ("3a2", 56)):
        assert len(klein.classes[klein.class_by_label(lab)]) == size
    for a in range(klein.order):
        if klein.elt_order[a] == 2:
            assert klein.class_label(a) == "2a0"
    with pytest.raises(KeyError):
        klein.class_by_label("5a0")


def test_tables(klein):
    rng = random.Random(5)
    G = klein
    for _ in range(200):
        a, b, c = (rng.randrange(G.order) for _ in range(3))
        assert G.mul[G.mul[a][b]][c] == G.mul[a][G.mul[b][c]]
        assert G.mul[a][G.inv[a]] == G.identity
        assert G.matrix(a) * G.matrix(b) == G.matrix(G.mul[a][b])
        assert G.class_label(G.conj(a, b)) == G.class_label(a)


def test_conjugators(klein, psl2_seed):
    G, s = klein, psl2_seed
    sols = find_conjugators(G, s, s)
    assert sorted(sols) == sorted(center(G))
    h = 17
    moved = tuple(G.conj(x, h) for x in s)
    found = find_conjugator(G, s, moved)
    assert found is not None and G.mul[found][G.inv[h]] in set(center(G))
    inv = next(a for a in range(G.order) if G.elt_order[a] == 2)
    c3 = next(a for a in range(G.order) if G.elt_order[a] == 3 and a in G.derived)
    assert find_conjugator(G, [inv], [c3]) is None


def test_generation(klein, psl2_seed):
    assert subgroup_generates(klein, klein.gens)
    assert subgroup_generates(klein, psl2_seed)
    inv = next(a for a in range(klein.order) if klein.elt_order[a] == 2)
    assert not subgroup_generates(klein, [inv])


def test_json_round_trip():
    S, T, Z = build_klein_rep(verify=False)
    G = group_from_json(group_to_json([S, T], 200))
    assert G.order == 168
