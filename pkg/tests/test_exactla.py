import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parcoh.exactla import (Mat, classify_rank2, image_basis, kernel_basis, rank, rref,
                            solve, vec_mat)
from parcoh.exactnum import CycNum

from conftest import W, W2, invertible, mats


def test_identity_product():
    A = Mat([[1, W], [W2, 3]])
    assert Mat.identity(2, 3) * A == A


def test_det_trace_examples():
    assert Mat.diag([1, 1, -1]).det() == -1
    first = Mat([[W2, 0, 1 - W], [W - W2, 1, W2 - 1], [0, 0, 1]])
    assert first.trace() == W2 + 2


def test_errors():
    with pytest.raises(ValueError):
        Mat([[1, 2]]) * Mat([[1, 2]])
    with pytest.raises(ZeroDivisionError):
        Mat([[1, 2], [2, 4]]).inv()


def test_rref_examples():
    R, piv, T = rref(Mat.identity(3, 3))
    assert R == Mat.identity(3, 3) and piv == [0, 1, 2] and T == Mat.identity(3, 3)
    Z = Mat.zeros(2, 3, 3)
    R, piv, T = rref(Z)
    assert R == Z and piv == [] and T == Mat.identity(2, 3)


def test_kernel_image_examples():
    g = Mat.diag([1, 1, -1])
    assert len(kernel_basis(g - Mat.identity(3))) == 2
    assert len(image_basis(Mat([[W]]) - Mat.identity(1, 3))) == 1


def test_solve_examples():
    b = (CycNum.one(3), W)
    assert solve(Mat.identity(2, 3), b) == b
    assert solve(Mat.zeros(2, 2, 3), b) is None


def test_classify_examples():
    assert classify_rank2(Mat([[1, 1], [0, 1]])).kind == "transvection"
    c = classify_rank2(Mat.diag([1, W]))
    assert c.kind == "homology" and c.eigenvalue == W
    assert classify_rank2(Mat.diag([W, W2])).kind == "other"
    assert classify_rank2(Mat.identity(2, 3)).kind == "identity"
    with pytest.raises(ValueError):
        classify_rank2(Mat.identity(3, 3))


def test_json_round_trip():
    A = Mat([[W, 1], [0, W2 / 5]])
    assert Mat.from_json(A.to_json()) == A


@settings(max_examples=25)
@given(mats(3, 4, 6))
def test_rref_transform_and_idempotence(A):
    R, piv, T = rref(A)
    assert T * A == R
    assert not T.det().is_zero()
    assert rref(R)[0] == R
    for i, c in enumerate(piv):
        assert R[i, c].is_one()
        assert all(R[k, c].is_zero() for k in range(A.rows) if k != i)


@settings(max_examples=25)
@given(st.integers(1, 4).flatmap(lambda r: mats(3, r, 3, max_num=2, max_den=1)))
def test_rank_nullity(A):
    ker = kernel_basis(A)
    assert rank(A) + len(ker) == A.rows
    for v in ker:
        assert all(x.is_zero() for x in vec_mat(v, A))


@settings(max_examples=25)
@given(invertible(3, 3))
def test_inverse(A):
    assert A.inv() * A == Mat.identity(3, 3)


@settings(max_examples=25)
@given(mats(3, 3, 4), mats(3, 1, 3))
def test_solve_consistent(A, x):
    b = vec_mat(x.e[0], A)
    y = solve(A, b)
    assert y is not None
    assert vec_mat(y, A) == b


@settings(max_examples=25)
@given(st.sampled_from([Mat([[1, 1], [0, 1]]), Mat.diag([1, W]), Mat.diag([W2, 1]),
                        Mat.diag([W, W2]), Mat([[2, 1], [1, 1]])]),
       invertible(3, 2))
def test_classify_conjugation_invariant(M, P):
    a, b = classify_rank2(M), classify_rank2(P * M * P.inv())
    assert a == b
