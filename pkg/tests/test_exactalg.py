import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from detdeform.exactalg import (
    GF32003, QQ, DenseMatrix, Field, gauss_kernel, gauss_rank, kernel_basis, nullity, rank, rref,
)

GF7, GF5 = Field(7), Field(5)


def test_identity_rank():
    assert rank(DenseMatrix.identity(3)) == 3


def test_all_ones_gf7():
    assert rank([[1, 1], [1, 1]], GF7) == 1


def test_forced_independent_rows():
    rng = random.Random(3)
    rows = []
    for i in range(4):
        r = [0] * 4 + [rng.randrange(32003) for _ in range(26)]
        r[i] = 1
        rows.append(r)
    assert rank(rows, GF32003) == 4


def test_kernel_examples():
    assert kernel_basis(DenseMatrix.identity(3)) == []
    assert len(kernel_basis(DenseMatrix.zeros(2, 5))) == 5
    (v,) = kernel_basis([[1, 1]], GF5)
    assert v == [4, 1] or v == [1, 4]
    assert (v[0] + v[1]) % 5 == 0


def test_empty_shapes():
    assert rank(DenseMatrix.zeros(0, 4)) == 0
    assert len(kernel_basis(DenseMatrix.zeros(0, 4))) == 4
    assert kernel_basis(DenseMatrix.zeros(3, 0)) == []


def test_rationals():
    m = DenseMatrix.from_rows([[Fraction(1, 2), 1], [1, 2]], QQ)
    assert rank(m) == 1
    (v,) = kernel_basis(m)
    assert m.apply(v) == [0, 0]


def test_rref_pivots():
    red, piv = rref([[0, 2, 4], [0, 1, 3]], GF7)
    assert piv == [1, 2]
    assert red.tolist()[:2] == [[0, 1, 0], [0, 0, 1]]


def test_field_validation():
    with pytest.raises(ValueError):
        Field(15)
    assert str(Field.parse("Q")) == "Q"
    assert Field.parse("GF(101)").p == 101
    assert GF32003.to_signed(32002) == -1
    with pytest.raises(ZeroDivisionError):
        GF7.inv(0)


def test_triplets_accumulate():
    m = DenseMatrix.from_triplets(2, 2, [0, 0, 1], [0, 0, 1], [3, 5, 6], GF7)
    assert m.tolist() == [[1, 0], [0, 6]]


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_flint_agrees_with_reference(rows):
    ncols = len(rows[0])
    assert rank(rows, GF7) == gauss_rank(rows, GF7)
    assert nullity(rows, GF7) == len(gauss_kernel(rows, ncols, GF7))


@given(matrices)
def test_kernel_vectors_are_killed(rows):
    m = DenseMatrix.from_rows(rows, GF7)
    basis = kernel_basis(m)
    assert len(basis) + rank(m) == m.cols
    for v in basis:
        assert all(x == 0 for x in m.apply(v))
    if basis:
        assert rank(basis, GF7) == len(basis)


@given(matrices)
def test_rank_of_transpose(rows):
    m = DenseMatrix.from_rows(rows, GF7)
    assert rank(m) == rank(m.transpose())
