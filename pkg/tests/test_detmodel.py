import pytest
from hypothesis import assume, given, strategies as st

from detdeform.detmodel import (
    DegreeData, DegreeDataError, HomogeneousMatrix, MatrixDegreeError, K, binom_nonneg,
    delete_column, dimW_formula, ell, exception_family, h_value, hypothesis_report, invariants,
    lambda2_general, lambda_c, lower_minors, maximal_minors, minor_degree, nonempty, random_matrix,
)
from detdeform.exactalg import QQ
from detdeform.gradedpoly import parse_polynomial, Polynomial

QUADRICS = DegreeData(4, [0, 0], [2, 2, 2, 2])


def test_binom():
    assert binom_nonneg(6, 4) == 15
    assert binom_nonneg(-1, 4) == 0
    assert binom_nonneg(0, 4) == 0
    assert binom_nonneg(4, 4) == 1


def test_ell():
    assert ell(QUADRICS, 3) == 8
    assert ell(DegreeData(4, [0, 0], [1, 1, 1, 3]), 3) == 6
    # a_0 + a_1 + a_2 - b_1 - b_2 = 3 - 2
    assert ell(DegreeData(2, [1, 1], [1, 1, 1]), 2) == 1
    with pytest.raises(IndexError):
        ell(QUADRICS, 4)


def test_lambda_and_formula():
    assert lambda_c(QUADRICS) == 101
    assert K(QUADRICS, 3) == 0
    assert dimW_formula(QUADRICS) == 101
    cubic = DegreeData(3, [0, 0], [1, 1, 1])
    assert lambda_c(cubic) == dimW_formula(cubic) == lambda2_general(cubic) == 12
    points = DegreeData(3, [0, 0], [1, 1, 1, 1])
    assert lambda_c(points) == 13 and dimW_formula(points) == 13


def test_K_values():
    dd = DegreeData(4, [0, 0], [1, 1, 1, 3])
    assert h_value(dd, 0) == 4
    assert K(dd, 3) == 1
    dd = DegreeData(6, [0, 0], [1, 1, 1, 1, 4])
    assert h_value(dd, 1) == 6
    assert K(dd, 4) == 26


def test_lambda2_needs_c2():
    dd = DegreeData(4, [0, 0], [1, 1, 2])
    assert lambda2_general(dd) == lambda_c(dd)
    with pytest.raises(DegreeDataError):
        lambda2_general(QUADRICS)


def test_nonempty():
    assert nonempty(QUADRICS)
    assert not nonempty(DegreeData(3, [0, 0], [0, 0, 5]))
    assert nonempty(DegreeData(3, [0, 1], [1, 1, 1]))


def test_invariant_set():
    inv = invariants(QUADRICS)
    assert inv.ell == {2: 6, 3: 8}
    assert inv.h == {0: 0}
    assert inv.K == {3: 0}
    assert inv.dimW_formula == 101


def test_hypotheses():
    r = hypothesis_report(QUADRICS)
    assert r.in_proven_range_2_11 and r.cor_5_6_applies
    assert not r.cor_5_9_applies
    assert hypothesis_report(DegreeData(3, [0, 0], [1, 1, 1, 1])).exception_family
    assert not hypothesis_report(DegreeData(3, [0, 0], [1, 1, 1, 1])).conj_2_2_hypotheses
    assert hypothesis_report(DegreeData(8, [0, 0], [1, 1, 1, 2, 3, 4, 5])).thm_2_3_applies


def test_exception_family_up_to_twist():
    assert exception_family(DegreeData(4, [2, 2], [3, 3, 3, 3, 3]))
    assert not exception_family(DegreeData(5, [0, 0], [1, 1, 1, 1, 1]))


@pytest.mark.parametrize("n,b,a", [(3, [0], [1, 1]), (3, [0, 0], [1, 1]), (3, [1, 0], [1, 1, 1]),
                                   (3, [0, 0], [2, 1, 1]), (1, [0, 0], [1, 1, 1])])
def test_bad_degree_data(n, b, a):
    with pytest.raises(DegreeDataError):
        DegreeData(n, b, a)


def test_random_matrix_contract():
    A = random_matrix(QUADRICS, seed=5)
    assert A == random_matrix(QUADRICS, seed=5)
    assert A != random_matrix(QUADRICS, seed=6)
    dd = DegreeData(3, [0, 1], [0, 1, 2])
    B = random_matrix(dd, seed=1, minimal=True)
    assert B.entry(2, 0).is_zero()          # degree -1
    assert B.entry(1, 0).is_zero() and B.entry(2, 1).is_zero()   # degree 0, minimal
    assert not B.entry(1, 1).is_zero()
    with pytest.raises(ValueError):
        random_matrix(dd, QQ)


def test_matrix_validation():
    dd = DegreeData(3, [0, 0], [1, 1, 1])
    x = lambda s: parse_polynomial(s, 3)
    with pytest.raises(MatrixDegreeError):
        HomogeneousMatrix(dd, [[x("x0"), x("x1"), x("x2^2")], [x("x1"), x("x2"), x("x3")]])
    with pytest.raises(MatrixDegreeError):
        HomogeneousMatrix(dd, [[x("x0"), x("x1")], [x("x1"), x("x2")]])
    dd0 = DegreeData(3, [0, 0], [0, 1, 1])
    with pytest.raises(MatrixDegreeError):
        HomogeneousMatrix(dd0, [[x("1"), x("x1"), x("x2")], [x("0"), x("x2"), x("x3")]], minimal=True)


def test_twisted_cubic_minors(cubic):
    got = [m for _, m in maximal_minors(cubic)]
    want = [parse_polynomial(s, 3) for s in ("x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2")]
    assert got == want
    assert len(lower_minors(cubic)) == 6  # the 1-minors are the six (nonzero) entries


def test_duplicated_column_kills_minors():
    A = random_matrix(DegreeData(4, [0, 0], [2, 2, 2, 2]), seed=3)
    rows = [list(r) for r in A.entries]
    for r in rows:
        r[1] = r[0]
    D = HomogeneousMatrix(A.dd, rows)
    for S, m in maximal_minors(D):
        assert m.is_zero() == (0 in S and 1 in S)


def test_quadric_minors(quadric_curve):
    ms = maximal_minors(quadric_curve)
    assert len(ms) == 6
    assert all(m.degree == 4 == minor_degree(quadric_curve.dd, S) for S, m in ms)


def test_delete_column(quadric_curve):
    B = delete_column(quadric_curve, 1)
    assert B.dd.a == (2, 2, 2) and B.c == 2
    assert B.column(1) == quadric_curve.column(2)
    with pytest.raises(DegreeDataError):
        delete_column(B, 0)


degree_data = st.builds(
    lambda t, c, e, b, a: (t, c, e, b, a),
    st.integers(2, 3), st.integers(2, 5), st.integers(0, 3),
    st.lists(st.integers(0, 3), min_size=3, max_size=3),
    st.lists(st.integers(0, 5), min_size=7, max_size=7),
).map(lambda x: DegreeData(x[1] + x[2], sorted(x[3][: x[0]]), sorted(x[4][: x[0] + x[1] - 1])))


@given(degree_data, st.integers(-3, 3))
def test_twist_invariance(dd, s):
    tw = dd.twist(s)
    assert lambda_c(tw) == lambda_c(dd)
    assert dimW_formula(tw) == dimW_formula(dd)
    assert nonempty(tw) == nonempty(dd)
    assert exception_family(tw) == exception_family(dd)
    for i in range(3, dd.c + 1):
        assert K(tw, i) == K(dd, i)
    # ell_i and h_i are not invariant themselves; they move by fixed multiples of s,
    # and only h_0 (the one feeding K_3) is genuinely invariant.
    for i in range(2, dd.c + 1):
        assert ell(tw, i) == ell(dd, i) + (i - 1) * s
    for i in range(0, dd.c - 2):
        assert h_value(tw, i) == h_value(dd, i) - i * s


@given(degree_data)
def test_c2_has_no_K_terms(dd):
    assume(dd.c == 2)
    assert dimW_formula(dd) == lambda_c(dd) == lambda2_general(dd)


@given(degree_data)
def test_invariants_bundle_is_consistent(dd):
    inv = invariants(dd)
    assert inv.dimW_formula == inv.lambda_c + sum(inv.K.values())
    assert sorted(inv.K) == list(range(3, dd.c + 1))
