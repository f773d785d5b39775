import pytest
from hypothesis import assume, given, settings

from parcoh.exactla import Mat
from parcoh.exactnum import CycNum
from parcoh.locsys import (GTuple, e_space, expected_dim, h_space, in_h_space,
                           invariants_space, parabolic_space, tuple_from_json, tuple_make,
                           tuple_to_json)

from conftest import W, W2, zero_invariant_tuples


def scalars(*xs):
    return tuple_make([Mat([[x]]) for x in xs])


PICARD = scalars(W, W, W, W, W2)
IDENT = tuple_make([Mat.identity(2, 3)] * 3)


def vec(*xs):
    return tuple(x if isinstance(x, CycNum) else CycNum.from_rational(x, 3) for x in xs)


def test_tuple_make():
    assert scalars(W, W, W).r == 3
    assert PICARD.r == 5
    with pytest.raises(ValueError):
        scalars(W, W)
    with pytest.raises(ValueError):
        scalars(W, W, W2)
    with pytest.raises(ValueError):
        tuple_make([Mat([[0]]), Mat([[1]]), Mat([[1]])])


def test_picard_spaces():
    assert len(h_space(PICARD)) == 4
    assert len(e_space(PICARD)) == 1
    e = e_space(PICARD)[0]
    expected = vec(W - 1, W - 1, W - 1, W - 1, W2 - 1)
    assert e == tuple(x / expected[0] for x in expected)
    for v in [vec(1, 0, 0, 0, -W2), vec(0, 1, 0, 0, -W), vec(0, 0, 1, 0, -1)]:
        assert in_h_space(PICARD, v)
    sp = parabolic_space(PICARD)
    assert sp.dim_w == 3
    assert expected_dim(PICARD) == (3, True)


def test_identity_tuple():
    assert h_space(IDENT) == [] and e_space(IDENT) == []
    assert parabolic_space(IDENT).dim_w == 0
    assert expected_dim(IDENT)[1] is False


def test_no_invariants_gives_full_e():
    g = tuple_make([Mat.diag([W, W2]), Mat.diag([W, W2]), Mat.diag([W, W2])])
    assert invariants_space(g) == []
    assert len(e_space(g)) == 2


def test_user_reps_rejected_when_dependent():
    sp = parabolic_space(PICARD)
    e = sp.eBasis[0]
    with pytest.raises(ValueError):
        sp.with_reps([e, vec(0, 1, 0, 0, -W), vec(0, 0, 1, 0, -1)])


def test_wcoords_vanish_on_e():
    sp = parabolic_space(PICARD)
    for e in sp.eBasis:
        assert all(x.is_zero() for x in sp.wCoords(e))
    with pytest.raises(ValueError):
        sp.wCoords(vec(1, 0, 0, 0, 0))


def test_json_round_trip():
    assert tuple_from_json(tuple_to_json(PICARD)) == PICARD


@settings(max_examples=100)
@given(zero_invariant_tuples())
def test_dimension_formula(g):
    assume(not invariants_space(g))
    sp = parabolic_space(g)
    value, applies = expected_dim(g)
    assert applies
    assert sp.dim_w == value
    for v in sp.hBasis:
        assert in_h_space(g, v)
    for e in sp.eBasis:
        assert sp.contains(e)
        assert all(x.is_zero() for x in sp.wCoords(e))
