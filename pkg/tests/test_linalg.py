from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dglakit.errors import NotASubspace
from dglakit.linalg import (Matrix, Subspace, complement, format_rational, image_basis, inverse,
                            kernel_basis, rank, rref, solve)


def M(rows, cols=None):
    return Matrix.from_rows(rows, cols)


def test_rref_rank_one():
    R, piv, r = rref(M([[1, 2], [2, 4]]))
    assert R == M([[1, 2], [0, 0]])
    assert piv == [0] and r == 1


def test_rref_identity_and_zero():
    I = Matrix.identity(3)
    assert rref(I) == (I, [0, 1, 2], 3)
    Z = Matrix.zeros(2, 2)
    assert rref(Z) == (Z, [], 0)


def test_kernel():
    K = kernel_basis(M([[1, 2], [2, 4]]))
    assert K == Subspace.span([[-2, 1]], 2)
    assert kernel_basis(Matrix.identity(3)).dim == 0
    assert kernel_basis(Matrix.zeros(3, 3)) == Subspace.full(3)


def test_image():
    assert image_basis(M([[1], [2]])) == Subspace.span([[1, 2]], 2)
    assert image_basis(Matrix.zeros(2, 3)).dim == 0
    assert image_basis(M([[1, 1], [0, 0]])) == Subspace.span([[1, 0]], 2)


def test_complement_examples():
    U = Subspace.span([[1, 0]], 2)
    W = complement(U, Subspace.full(2))
    assert W == Subspace.span([[0, 1]], 2)
    assert complement(U, U).dim == 0
    V = Subspace.span([[1, 1, 0], [0, 0, 1]], 3)
    assert complement(Subspace.zero(3), V) == V


def test_complement_requires_subspace():
    with pytest.raises(NotASubspace):
        complement(Subspace.span([[1, 0]], 2), Subspace.span([[0, 1]], 2))


def test_solve():
    b = (Fraction(3), Fraction(-1, 2))
    assert tuple(solve(Matrix.identity(2), b)) == b
    assert tuple(solve(M([[1, 2], [2, 4]]), [1, 2])) == (1, 0)
    assert solve(M([[1, 2], [2, 4]]), [1, 0]) is None


def test_format_rational():
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(Fraction(4)) == "4"


small = st.integers(-3, 3)
matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_rank_nullity_and_kernel(rows):
    A = M(rows)
    K = kernel_basis(A)
    assert rank(A) + K.dim == A.cols
    for v in K.basis:
        assert all(x == 0 for x in A @ v)
    assert image_basis(A).dim == rank(A)


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_complement_is_direct_summand(rows):
    n = len(rows[0])
    U = Subspace.span(rows[:1], n)
    V = Subspace.span(rows, n)
    W = complement(U, V)
    assert U.dim + W.dim == V.dim
    assert (U + W) == V
    assert U.intersection(W).dim == 0


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_inverse(rows):
    A = M(rows)
    if rank(A) < 3:
        with pytest.raises(ZeroDivisionError):
            inverse(A)
    else:
        assert A @ inverse(A) == Matrix.identity(3)
