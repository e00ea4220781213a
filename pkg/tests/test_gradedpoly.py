import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from detdeform.exactalg import GF32003, QQ, DenseMatrix, Field
from detdeform.gradedpoly import (
    Polynomial, PolynomialSyntaxError, format_polynomial, monomial_basis, monomial_index,
    mult_slice_matrix, multiply, parse_polynomial, random_homogeneous, slice_dim,
)


def P(text, n=3, field=GF32003):
    return parse_polynomial(text, n, field)


def test_basis_examples():
    assert len(monomial_basis(4, 2)) == 15
    assert monomial_basis(3, 0) == [(0, 0, 0, 0)]
    assert monomial_basis(2, -1) == []
    assert monomial_basis(1, 2) == [(2, 0), (1, 1), (0, 2)]


def test_basis_is_grlex_and_indexed():
    basis = monomial_basis(3, 3)
    assert basis == sorted(basis, reverse=True)
    idx = monomial_index(3, 3, basis)
    assert list(idx) == list(range(len(basis)))


def test_multiply_examples():
    assert multiply(P("x0 + x1"), P("x0 - x1")) == P("x0^2 - x1^2")
    assert multiply(Polynomial.zero(4), P("x0*x1")).is_zero()
    assert multiply(P("x0"), P("x1*x2")) == P("x0*x1*x2")


def test_mult_slice_examples():
    one = Polynomial.constant(1, 4)
    assert mult_slice_matrix(one, 2) == DenseMatrix.identity(10)
    x0 = Polynomial.variable(0, 2)
    assert mult_slice_matrix(x0, 1).tolist() == [[1, 0], [0, 1], [0, 0]]
    assert mult_slice_matrix(Polynomial.zero(3, degree=2), 1).is_zero()


def test_parse_examples():
    p = P("x0^2 - 3*x1*x2")
    assert p.degree == 2 and len(p) == 2
    assert P("0").is_zero()
    mixed = P("x0 + x1^2")
    assert mixed.degree is None and not mixed.is_homogeneous()


def test_parse_rational_coefficient():
    p = P("1/2*x0", field=QQ)
    assert p.coefficient((1, 0, 0, 0)) == QQ(1) / 2
    q = P("1/2*x0")
    assert 2 * q.coefficient((1, 0, 0, 0)) % 32003 == 1


@pytest.mark.parametrize("text,pos", [("x0 + ", 5), ("x9", 0), ("x0 $ x1", 3), ("3/0*x0", 1), ("x0 x1", 3)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(PolynomialSyntaxError) as err:
        P(text)
    assert err.value.pos == pos


def test_declared_degree_is_checked():
    with pytest.raises(ValueError):
        Polynomial({(1, 0): 1, (2, 0): 1}, 2, GF32003, 1)


@st.composite
def homogeneous(draw, n=2, max_degree=3):
    d = draw(st.integers(0, max_degree))
    seed = draw(st.integers(0, 10**6))
    return random_homogeneous(n, d, Field(101), random.Random(seed))


@given(homogeneous(), homogeneous(), homogeneous())
def test_ring_axioms(p, q, r):
    assert multiply(p, q) == multiply(q, p)
    assert multiply(multiply(p, q), r) == multiply(p, multiply(q, r))
    if q.degree == r.degree:
        assert multiply(p, q + r) == multiply(p, q) + multiply(p, r)


@given(homogeneous(), homogeneous(), st.integers(0, 3))
def test_slice_matrices_compose(p, q, v):
    lhs = mult_slice_matrix(multiply(p, q), v)
    rhs = mult_slice_matrix(p, v + q.degree) @ mult_slice_matrix(q, v)
    assert lhs == rhs


@given(homogeneous(), st.integers(0, 3))
def test_slice_matrix_matches_product(p, v):
    m = mult_slice_matrix(p, v)
    for j, mono in enumerate(monomial_basis(2, v)):
        col = [row[j] for row in m.tolist()]
        assert col == multiply(p, Polynomial.monomial(mono, p.field)).coefficient_vector(v + p.degree)


@given(homogeneous())
def test_format_parse_roundtrip(p):
    assert parse_polynomial(format_polynomial(p), 2, p.field) == p


@given(st.integers(0, 5), st.integers(-2, 6))
def test_slice_dim(n, v):
    assert slice_dim(n, v) == (comb(v + n, n) if v >= 0 else 0) == len(monomial_basis(n, v))
