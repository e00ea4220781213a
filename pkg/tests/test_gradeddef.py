import random

import pytest
from hypothesis import given, settings, strategies as st

from detdeform.complexes import build_buchsbaum_rim, build_eagon_northcott, hilbert_from_complex
from detdeform.detmodel import (
    DegreeData, HomogeneousMatrix, dimW_formula, lower_minors, maximal_minors, random_matrix,
)
from detdeform.gradeddef import (
    COMPONENT_CERTIFIED, DIM_W_ONLY, EMPTY, GRADALG_CAVEAT, INCONCLUSIVE,
    NOT_STANDARD_DETERMINANTAL, GradedModulePresentation, classify, codim_estimate,
    column_deletion_report, certificate, edge_map_apply, edge_map_rank, ext1_A_dim, ext1_R_dim,
    ext1_R_dim_via_cokernel, hom_IX_A_dim, hom_MM_dim, hom_MM_dim_via_slices, module_slice_dim,
    quotient_ring, ring_slice_dim, trivial_perturbation,
)
from detdeform.gradedpoly import Polynomial, parse_polynomial


@pytest.fixture(scope="module")
def quadric_parts(quadric_curve):
    return quotient_ring(quadric_curve), GradedModulePresentation(quadric_curve)


def matrix(dd, rows):
    return HomogeneousMatrix(dd, [[parse_polynomial(s, dd.n) for s in r] for r in rows])


def test_module_slices(quadric_parts, cubic):
    _, M = quadric_parts
    assert module_slice_dim(M, 0) == 2
    assert module_slice_dim(M, 2) == 26
    assert module_slice_dim(M, -1) == 0
    assert module_slice_dim(GradedModulePresentation(cubic), 1) == 5


def test_ring_slices(quadric_parts, cubic):
    Q, _ = quadric_parts
    assert ring_slice_dim(Q, 4) == 64
    assert ring_slice_dim(Q, 3) == 35
    assert ring_slice_dim(quotient_ring(cubic), 2) == 7


def test_br_rank_hint_matches_direct(quadric_curve):
    br = build_buchsbaum_rim(quadric_curve)
    hinted, plain = GradedModulePresentation(quadric_curve, br), GradedModulePresentation(quadric_curve)
    assert [hinted.dim(v) for v in range(7)] == [plain.dim(v) for v in range(7)]
    assert [hinted.dim(v) for v in range(7)] == [hilbert_from_complex(br, v) for v in range(7)]


def test_hom_and_ext_over_R(quadric_parts, cubic):
    _, M = quadric_parts
    assert hom_MM_dim(M) == hom_MM_dim_via_slices(M) == 1
    assert ext1_R_dim(M) == ext1_R_dim_via_cokernel(M) == 101
    N = GradedModulePresentation(cubic)
    assert hom_MM_dim(N) == 1
    assert ext1_R_dim(N) == 12 == 3 * 5 - 2 * 2 + 1


def test_block_diagonal_has_extra_endomorphisms():
    A = matrix(DegreeData(3, [0, 0], [1, 1, 1]), [["x0", "x1", "0"], ["0", "0", "x2"]])
    M = GradedModulePresentation(A)
    assert hom_MM_dim(M) >= 2
    assert hom_MM_dim(M) == hom_MM_dim_via_slices(M)
    assert ext1_R_dim(M) == ext1_R_dim_via_cokernel(M)


def test_ext1_R_twist_invariant():
    dd = DegreeData(3, [0, 0], [1, 1, 2])
    A = random_matrix(dd, seed=4)
    B = HomogeneousMatrix(dd.twist(2), A.entries)
    assert ext1_R_dim(GradedModulePresentation(A)) == ext1_R_dim(GradedModulePresentation(B))


def test_hom_IX_A(quadric_curve, quadric_parts, cubic):
    Q, _ = quadric_parts
    assert hom_IX_A_dim(quadric_curve, Q) == 101
    assert hom_IX_A_dim(cubic) == 12


def test_edge_map(quadric_curve, quadric_parts):
    Q, _ = quadric_parts
    assert edge_map_rank(quadric_curve, Q) == (120, 101)
    assert ext1_A_dim(quadric_curve, 101, Q) == 0
    zero = [[Polynomial.zero(5, degree=2)] * 4 for _ in range(2)]
    assert all(not any(v) for v in edge_map_apply(quadric_curve, zero, Q))


def test_trivial_perturbations_vanish(cubic):
    rng = random.Random(9)
    Q = quotient_ring(cubic)
    for _ in range(3):
        image = edge_map_apply(cubic, trivial_perturbation(cubic, rng), Q)
        assert all(not any(v) for v in image)


def test_nontrivial_perturbation_is_seen(cubic):
    A1 = [[Polynomial.zero(4, degree=1)] * 3 for _ in range(2)]
    A1[0][0] = parse_polynomial("x3", 3)
    image = edge_map_apply(cubic, A1, quotient_ring(cubic))
    assert any(any(v) for v in image)


def test_ext1_A_cubic(cubic):
    assert ext1_A_dim(cubic) == 0


def test_codim_examples(cubic, quadric_curve):
    est = codim_estimate([m for _, m in maximal_minors(cubic)], 8)
    assert est.dim == 1 and est.codim == 2
    assert list(est.values[:5]) == [1, 4, 7, 10, 13]
    entries = [f for row in quadric_curve.entries for f in row]
    est = codim_estimate(entries, 10)
    assert est.empty and est.dim == -1 and est.values[-1] == 0
    est = codim_estimate([], 6, n=3, field=cubic.field)
    assert est.dim == 3 and est.codim == 0
    with pytest.raises(ValueError):
        codim_estimate([m for _, m in maximal_minors(cubic)], 3)


def test_column_deletion(quadric_curve, cubic):
    rep = column_deletion_report(quadric_curve)
    assert len(rep) == 4 and all(e.empty for e in rep)
    with pytest.raises(ValueError):
        column_deletion_report(cubic)


def test_column_deletion_with_zero_column():
    dd = DegreeData(4, [0, 0], [1, 1, 1, 1])
    A = random_matrix(dd, seed=2)
    rows = [list(r) for r in A.entries]
    for r in rows:
        r[3] = Polynomial.zero(5, degree=1)
    rep = column_deletion_report(HomogeneousMatrix(dd, rows))
    # deleting a nonzero column leaves 4 linear forms in P^4: a point survives
    assert [e.empty for e in rep] == [False, False, False, True]


def test_classify():
    assert classify(1, 5, 5) == INCONCLUSIVE
    assert classify(0, 5, 5) == COMPONENT_CERTIFIED
    assert classify(0, 6, 5) == DIM_W_ONLY


def test_certificates(cubic):
    tr = certificate(cubic)
    assert tr.verdict == COMPONENT_CERTIFIED and tr.hom_IX_A == 12 and tr.certified
    assert tr.codim_It.codim == 2 and tr.column_deletion is None
    pts = certificate(random_matrix(DegreeData(3, [0, 0], [1, 1, 1, 1]), seed=1))
    assert pts.verdict == GRADALG_CAVEAT and pts.formula_lambda == 13
    assert pts.inner_verdict is not None and not pts.certified


def test_empty_degree_data_is_refused():
    A = random_matrix(DegreeData(3, [0, 0], [0, 0, 5]), seed=1)
    tr = certificate(A)
    assert tr.verdict == EMPTY and tr.refusal == EMPTY


def test_duplicated_column_is_refused(quadric_curve):
    rows = [list(r) for r in quadric_curve.entries]
    for r in rows:
        r[1] = r[0]
    tr = certificate(HomogeneousMatrix(quadric_curve.dd, rows), deletion=False)
    assert tr.verdict == NOT_STANDARD_DETERMINANTAL
    assert tr.ext1_R >= 0 and tr.hom_IX_A >= 0      # numbers are still reported


@settings(max_examples=8)
@given(st.sampled_from([(3, [0, 0], [1, 1, 2]), (4, [0, 0], [1, 1, 1]), (4, [0, 1], [1, 2, 2]),
                        (4, [0, 0], [1, 1, 1, 1]), (3, [0, 0, 0], [1, 1, 1, 1])]),
       st.integers(0, 10**6))
def test_generic_instances(spec, seed):
    dd = DegreeData(*spec)
    A = random_matrix(dd, seed=seed)
    M = GradedModulePresentation(A)
    hom = hom_MM_dim(M)
    assert hom == hom_MM_dim_via_slices(M) == 1
    ext = ext1_R_dim(M, hom)
    assert ext == ext1_R_dim_via_cokernel(M) == dimW_formula(dd)
    assert 0 <= ext1_A_dim(A, ext)
