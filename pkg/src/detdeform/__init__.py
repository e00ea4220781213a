"""Determinantal schemes: invariants, resolutions and graded deformation certificates.

Exact arithmetic throughout: coefficients live in GF(p) (default p = 32003) or Q.
"""

from .exactalg import Field, GF32003, QQ, DenseMatrix, rank, kernel_basis
from .gradedpoly import (
    Polynomial, monomial_basis, multiply, mult_slice_matrix, parse_polynomial, format_polynomial,
)
from .detmodel import (
    DegreeData, HomogeneousMatrix, binom_nonneg, ell, h_value, lambda_c, K, dimW_formula,
    nonempty, lambda2_general, invariants, hypothesis_report, random_matrix, maximal_minors,
    delete_column,
)
from .complexes import (
    GradedFreeModule, GradedFreeComplex, ChainMap, HilbertData, build_eagon_northcott,
    build_buchsbaum_rim, verify_dd_zero, verify_exactness, hilbert_from_complex,
    hilbert_polynomial, reduced_sum, build_tau, verify_tau,
)
from .gradeddef import (
    GradedModulePresentation, QuotientRingSlices, TangentReport, CodimEstimate,
    module_slice_dim, ring_slice_dim, quotient_ring, hom_MM_dim, ext1_R_dim, hom_IX_A_dim,
    edge_map_rank, edge_map_apply, ext1_A_dim, codim_estimate, column_deletion_report,
    certificate,
)

__version__ = "0.1.0"
