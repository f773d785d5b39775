import pytest

from parcoh.braidact import BraidWord, tuple_act_indices
from parcoh.exactla import Mat
from parcoh.fingrp import group_closure
from parcoh.hurworb import (braid_orbit, cover_analysis, cusp_generators, delta_to_braid,
                            enumerate_type, free_reduce, nielsen_canonical, orbit_to_dot,
                            planar_loops, type_arrangements, word_perm)
from parcoh.scenarios import PSL2_TYPE

from conftest import W


@pytest.fixture(scope="module")
def classes(klein):
    return [klein.class_by_label(x) for x in PSL2_TYPE]


def compose(p, q):
    return [q[x] for x in p]


def test_canonical_forms(klein, psl2_seed):
    G, s = klein, psl2_seed
    base = nielsen_canonical(G, s, True)
    conj = tuple(G.conj(x, 101) for x in s)
    assert nielsen_canonical(G, conj, False) == nielsen_canonical(G, s, False)
    q1 = BraidWord(4, ((1, 1), (3, -1)))
    q2 = BraidWord(4, ((1, 1), (2, 1), (3, 1)) * 2)
    for q in (q1, q2):
        assert nielsen_canonical(G, tuple_act_indices(G.mul, G.inv, s, q), True) == base
    with pytest.raises(ValueError):
        nielsen_canonical(G, (G.identity,) * 4, True)
    with pytest.raises(ValueError):
        nielsen_canonical(G, (s[0], s[0], s[0], s[0]), True)


def test_enumerate_type(klein, classes):
    found = enumerate_type(klein, classes)
    assert len(found) == 90
    # involutions all lie in the derived subgroup, so they never generate
    inv = klein.class_by_label("2a0")
    assert enumerate_type(klein, [inv] * 3) == []


def test_enumerate_closed_under_braids(klein, classes):
    found = {c.rep for c in enumerate_type(klein, classes)}
    orbit = braid_orbit(klein, next(iter(sorted(found))))
    assert {p.rep for p in orbit.points} == found


def test_cyclic_group_picard_type():
    G = group_closure([Mat([[W]])], 10)
    s = G.index_of(Mat([[W]]))
    s2 = G.mul[s][s]
    t = (s, s, s, s, s2)
    orbit = braid_orbit(G, t)
    assert len(orbit) == 5
    assert len(type_arrangements(G, [G.classTable[x] for x in t])) == 10


def test_orbit_permutations(psl2_orbit):
    o = psl2_orbit
    N = len(o)
    ident = list(range(N))
    b1, b2, b3 = o.perms["b1"], o.perms["b2"], o.perms["b3"]
    assert compose(compose(b1, b2), b1) == compose(compose(b2, b1), b2)
    assert compose(compose(b2, b3), b2) == compose(compose(b3, b2), b3)
    assert compose(b1, b3) == compose(b3, b1)
    assert b1 == b3   # b1 b3^-1 lies in Q
    d0, dinf, d1728 = o.perms["d_0"], o.perms["d_inf"], o.perms["d_1728"]
    assert compose(compose(d0, dinf), d1728) == ident
    assert compose(compose(d0, d0), d0) == ident
    assert compose(d1728, d1728) == ident
    assert all(d1728[x] != x for x in range(N))


def test_cover(psl2_orbit):
    rep = cover_analysis(psl2_orbit)
    assert rep.degree == 90
    assert len(rep.cusps) == 17
    assert rep.genus == 0
    assert sum(rep.widths()) == 90
    assert rep.widths().count(4) == 5
    assert rep.fixedPoints["d_0"] == 0 and rep.fixedPoints["d_1728"] == 0


def test_planar_loops(psl2_orbit):
    loops = planar_loops(psl2_orbit)
    total = ()
    for _, _, _, w in loops:
        total = free_reduce(total + w)
    assert total == ()
    assert sum(1 for b, *_ in loops if b == "p2") == 17


def test_cusp_generators(klein, psl2_seed, psl2_orbit):
    gens = cusp_generators(klein, psl2_orbit, psl2_seed)
    assert len(gens) == 17
    assert sorted(gens.widths) == cover_analysis(psl2_orbit).widths()
    for w, h, word in zip(gens.braidWords, gens.twists, gens.words):
        assert word_perm(psl2_orbit, word, 0) == 0
        moved = tuple_act_indices(klein.mul, klein.inv, psl2_seed, w)
        assert moved == tuple(klein.conj(x, h) for x in psl2_seed)
    assert all(i in (1, 2) for b in gens.braidWords for i, _ in b.letters)


def test_delta_to_braid():
    assert delta_to_braid((("d_inf", 1),)).letters == ((1, 1),)
    assert delta_to_braid((("d_0", -1),)).letters == ((2, -1), (1, -1))


def test_dot(psl2_orbit):
    text = orbit_to_dot(psl2_orbit)
    assert text.startswith("digraph") and text.count("->") == 3 * 90
