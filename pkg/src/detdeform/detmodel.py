"""Degree data (b; a), the closed-form invariants and homogeneous matrices.

Indexing follows the usual conventions for determinantal schemes: rows
``i = 1..t`` carry ``b_i`` and columns ``j = 0..t+c-2`` carry ``a_j``; entry
``f_ij`` has degree ``a_j - b_i``.  In code, ``b[i - 1]`` is ``b_i`` and
``a[j]`` is ``a_j``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Sequence

from .exactalg import GF32003, Field
from .gradedpoly import Polynomial, random_homogeneous


class DegreeDataError(ValueError):
    pass


@dataclass(frozen=True)
class DegreeData:
    n: int
    b: tuple[int, ...]
    a: tuple[int, ...]

    def __init__(self, n: int, b: Sequence[int], a: Sequence[int]):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "b", tuple(int(x) for x in b))
        object.__setattr__(self, "a", tuple(int(x) for x in a))
        self._validate()

    def _validate(self):
        t, c = self.t, self.c
        if t < 2:
            raise DegreeDataError(f"need t >= 2 rows, got t = {t}")
        if c < 2:
            raise DegreeDataError(f"need c >= 2, i.e. at least t + 1 = {t + 1} column degrees; got {len(self.a)}")
        if list(self.b) != sorted(self.b):
            raise DegreeDataError(f"b must be ascending, got {self.b}")
        if list(self.a) != sorted(self.a):
            raise DegreeDataError(f"a must be ascending, got {self.a}")
        if self.n - c < 0:
            raise DegreeDataError(f"need n >= c, got n = {self.n}, c = {c}")

    @property
    def t(self) -> int:
        return len(self.b)

    @property
    def c(self) -> int:
        return len(self.a) - len(self.b) + 1

    @property
    def ncols(self) -> int:
        return len(self.a)

    def entry_degree(self, i: int, j: int) -> int:
        """Degree of f_ij with 1-based row i and 0-based column j."""
        return self.a[j] - self.b[i - 1]

    def twist(self, s: int) -> "DegreeData":
        return DegreeData(self.n, [x + s for x in self.b], [x + s for x in self.a])

    def __str__(self):
        bs = ",".join(map(str, self.b))
        as_ = ",".join(map(str, self.a))
        return f"n={self.n} b=({bs}) a=({as_})"


def binom_nonneg(top: int, bottom: int) -> int:
    """C(top, bottom) with the convention C(top, bottom) = 0 for negative top."""
    if bottom < 0:
        raise ValueError("bottom must be nonnegative")
    if top < 0:
        return 0
    return comb(top, bottom)


def ell(dd: DegreeData, i: int) -> int:
    """sum_{j=0}^{t+i-2} a_j - sum_k b_k, for 2 <= i <= c."""
    if not 2 <= i <= dd.c:
        raise IndexError(f"ell index must lie in 2..{dd.c}, got {i}")
    return sum(dd.a[: dd.t + i - 1]) - sum(dd.b)


def h_value(dd: DegreeData, i: int) -> int:
    """h_i = 2 a_{t+i+1} - ell_{i+3} + n for 0 <= i <= c-3."""
    if not 0 <= i <= dd.c - 3:
        raise IndexError(f"h index must lie in 0..{dd.c - 3}, got {i}")
    return 2 * dd.a[dd.t + i + 1] - ell(dd, i + 3) + dd.n


def lambda_c(dd: DegreeData) -> int:
    n, a, b = dd.n, dd.a, dd.b
    total = 1
    total += sum(binom_nonneg(ai - bj + n, n) for ai in a for bj in b)
    total += sum(binom_nonneg(bj - ai + n, n) for ai in a for bj in b)
    total -= sum(binom_nonneg(ai - aj + n, n) for ai in a for aj in a)
    total -= sum(binom_nonneg(bi - bj + n, n) for bi in b for bj in b)
    return total


def K(dd: DegreeData, idx: int) -> int:
    """K_idx for 3 <= idx <= c.

    With i = idx - 3 this is the signed sum over r + s = i of
    C(h_i + a_{i_1} + ... + a_{i_r} + b_{j_1} + ... + b_{j_s}, n), where
    0 <= i_1 < ... < i_r <= t + i and 1 <= j_1 <= ... <= j_s <= t, with sign
    (-1)^(i - r).
    """
    if not 3 <= idx <= dd.c:
        raise IndexError(f"K index must lie in 3..{dd.c}, got {idx}")
    i = idx - 3
    h = h_value(dd, i)
    t, n = dd.t, dd.n
    a_pool = dd.a[: t + i + 1]
    total = 0
    for r in range(i + 1):
        s = i - r
        sign = -1 if s % 2 else 1
        for asub in itertools.combinations(a_pool, r):
            sa = sum(asub)
            for bsub in itertools.combinations_with_replacement(dd.b, s):
                total += sign * binom_nonneg(h + sa + sum(bsub), n)
    return total


def dimW_formula(dd: DegreeData) -> int:
    return lambda_c(dd) + sum(K(dd, i) for i in range(3, dd.c + 1))


def nonempty(dd: DegreeData) -> bool:
    """a_{i-1} >= b_i for all i and a_{i-1} > b_i for some i."""
    pairs = [(dd.a[i - 1], dd.b[i - 1]) for i in range(1, dd.t + 1)]
    return all(x >= y for x, y in pairs) and any(x > y for x, y in pairs)


def lambda2_general(dd: DegreeData) -> int:
    """Tangent dimension of the Hilbert scheme at a codimension-2 determinantal scheme.

    Over a polynomial ring dim R_v = C(v + n, n), so this is lambda_c with c = 2.
    """
    if dd.c != 2:
        raise DegreeDataError(f"lambda2_general needs c = 2, got c = {dd.c}")
    return lambda_c(dd)


@dataclass(frozen=True)
class InvariantSet:
    ell: dict[int, int]
    h: dict[int, int]
    lambda_c: int
    K: dict[int, int]
    dimW_formula: int


def invariants(dd: DegreeData) -> InvariantSet:
    return InvariantSet(
        ell={i: ell(dd, i) for i in range(2, dd.c + 1)},
        h={i: h_value(dd, i) for i in range(0, dd.c - 2)},
        lambda_c=lambda_c(dd),
        K={i: K(dd, i) for i in range(3, dd.c + 1)},
        dimW_formula=dimW_formula(dd),
    )


# -- hypothesis predicates --------------------------------------------------------


@dataclass(frozen=True)
class HypothesisReport:
    """Degree-data predicates.

    ``conj_2_2_hypotheses`` reads the bracket in min([c/2] + 1, t) as floor.
    It is true when the degree conditions hold, W(b; a) is nonempty and the
    data is not the exceptional family of c + 1 points.
    """

    nonempty: bool
    exception_family: bool
    in_proven_range_2_11: bool
    thm_2_3_applies: bool
    conj_2_2_hypotheses: bool
    cor_5_6_applies: bool
    cor_5_9_applies: bool
    conj_2_4_applies: bool


def _offset_condition(dd: DegreeData, m: int, strict: bool = False) -> bool:
    """a_{i-m} >= b_i (or >) for m <= i <= t."""
    for i in range(m, dd.t + 1):
        x, y = dd.a[i - m], dd.b[i - 1]
        if x < y or (strict and x == y):
            return False
    return True


def exception_family(dd: DegreeData) -> bool:
    """W(0,0;1,...,1) in P^c up to a common twist: c + 1 general points."""
    if dd.t != 2 or dd.b[0] != dd.b[1] or dd.n != dd.c:
        return False
    beta = dd.b[0]
    return len(dd.a) == dd.c + 1 and all(x == beta + 1 for x in dd.a)


def hypothesis_report(dd: DegreeData) -> HypothesisReport:
    t, c, n = dd.t, dd.c, dd.n
    ne = nonempty(dd)
    exc = exception_family(dd)
    m = min(c // 2 + 1, t)
    conj22 = ne and not exc and _offset_condition(dd, m, strict=(n == c))
    if c > 5:
        thm23 = dd.a[0] > dd.b[-1] and dd.a[t + 3] > dd.a[t - 2]
    else:
        thm23 = dd.a[0] > dd.b[-1] and dd.a[t + c - 2] > dd.a[t - 2]
    return HypothesisReport(
        nonempty=ne,
        exception_family=exc,
        in_proven_range_2_11=2 <= c <= 5 and n - c >= 1,
        thm_2_3_applies=thm23,
        conj_2_2_hypotheses=conj22,
        cor_5_6_applies=ne and n - c >= 1 and _offset_condition(dd, 2),
        cor_5_9_applies=ne and n - c >= 2 and _offset_condition(dd, min(3, t)),
        conj_2_4_applies=n - c >= 2 and c >= 5 and dd.a[0] > dd.b[-1],
    )


# -- matrices ------------------------------------------------------------------------


class MatrixDegreeError(ValueError):
    pass


@dataclass(frozen=True)
class HomogeneousMatrix:
    """t x (t+c-1) matrix of homogeneous polynomials with deg f_ij = a_j - b_i."""

    dd: DegreeData
    entries: tuple[tuple[Polynomial, ...], ...]
    field: Field = GF32003
    minimal: bool = False
    seed: int | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        dd = self.dd
        entries = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != dd.t or any(len(r) != dd.ncols for r in entries):
            raise MatrixDegreeError(f"matrix must be {dd.t} x {dd.ncols}")
        for i in range(1, dd.t + 1):
            for j in range(dd.ncols):
                f = entries[i - 1][j]
                d = dd.entry_degree(i, j)
                if f.nvars != dd.n + 1:
                    raise MatrixDegreeError(f"entry ({i},{j}) lives in the wrong ring")
                if f.field != self.field:
                    raise MatrixDegreeError(f"entry ({i},{j}) has coefficients in {f.field}, not {self.field}")
                if not f.is_homogeneous(d):
                    raise MatrixDegreeError(f"entry ({i},{j}) = {f} is not homogeneous of degree {d}")
                if d < 0 and not f.is_zero():
                    raise MatrixDegreeError(f"entry ({i},{j}) must be 0 since a_j - b_i = {d} < 0")
                if self.minimal and d == 0 and not f.is_zero():
                    raise MatrixDegreeError(f"minimal matrix needs f_{i}{j} = 0 since a_j = b_i")
                if f.degree != d:
                    # pin the declared degree of zero entries
                    row = list(entries[i - 1])
                    row[j] = f.with_degree(d)
                    entries = entries[: i - 1] + (tuple(row),) + entries[i:]
        object.__setattr__(self, "entries", entries)

    @property
    def t(self) -> int:
        return self.dd.t

    @property
    def c(self) -> int:
        return self.dd.c

    @property
    def n(self) -> int:
        return self.dd.n

    @property
    def nvars(self) -> int:
        return self.dd.n + 1

    def entry(self, i: int, j: int) -> Polynomial:
        """f_ij, 1-based row and 0-based column."""
        return self.entries[i - 1][j]

    def column(self, j: int) -> list[Polynomial]:
        return [row[j] for row in self.entries]

    def __str__(self):
        return "\n".join("[" + ", ".join(str(f) for f in row) + "]" for row in self.entries)


def random_matrix(dd: DegreeData, field: Field = GF32003, seed: int = 0,
                  minimal: bool = False) -> HomogeneousMatrix:
    """Uniformly random homogeneous matrix for ``dd``; deterministic in ``seed``."""
    if not field.is_prime:
        raise ValueError("random matrices are drawn over prime fields only; got Q")
    rng = random.Random(seed)
    rows = []
    for i in range(1, dd.t + 1):
        row = []
        for j in range(dd.ncols):
            d = dd.entry_degree(i, j)
            if d < 0 or (minimal and d == 0):
                row.append(Polynomial.zero(dd.n + 1, field, d))
            else:
                row.append(random_homogeneous(dd.n, d, field, rng))
        rows.append(row)
    return HomogeneousMatrix(dd, rows, field, minimal, seed)


def determinant(rows: Sequence[Sequence[Polynomial]], nvars: int, field: Field,
                degree: int | None = None) -> Polynomial:
    """Laplace expansion along the first row."""
    k = len(rows)
    if k == 0:
        return Polynomial.constant(1, nvars, field)
    if k == 1:
        return rows[0][0]
    total = Polynomial.zero(nvars, field, degree)
    for col in range(k):
        f = rows[0][col]
        if f.is_zero():
            continue
        sub = [r[:col] + r[col + 1:] for r in rows[1:]]
        term = f * determinant(sub, nvars, field)
        total = total - term if col % 2 else total + term
    if degree is not None and total.is_zero():
        total = total.with_degree(degree)
    return total


def minor_degree(dd: DegreeData, cols: Sequence[int]) -> int:
    return sum(dd.a[j] for j in cols) - sum(dd.b)


def submatrix(A: HomogeneousMatrix, rows: Sequence[int], cols: Sequence[int]) -> list[list[Polynomial]]:
    """Entries for 0-based row indices and column indices."""
    return [[A.entries[r][j] for j in cols] for r in rows]


def minor(A: HomogeneousMatrix, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
    dd = A.dd
    deg = sum(dd.a[j] for j in cols) - sum(dd.b[r] for r in rows)
    return determinant(submatrix(A, rows, cols), A.nvars, A.field, deg)


def maximal_minors(A: HomogeneousMatrix) -> list[tuple[tuple[int, ...], Polynomial]]:
    """All t x t minors, column subsets in lexicographic order."""
    rows = range(A.t)
    return [(S, minor(A, rows, S)) for S in itertools.combinations(range(A.dd.ncols), A.t)]


def lower_minors(A: HomogeneousMatrix) -> list[Polynomial]:
    """Nonzero (t-1) x (t-1) minors, generating I_{t-1}(A)."""
    out = []
    for rows in itertools.combinations(range(A.t), A.t - 1):
        for cols in itertools.combinations(range(A.dd.ncols), A.t - 1):
            m = minor(A, rows, cols)
            if not m.is_zero():
                out.append(m)
    return out


def delete_column(A: HomogeneousMatrix, j: int) -> HomogeneousMatrix:
    dd = A.dd
    if not 0 <= j < dd.ncols:
        raise IndexError(f"column index must lie in 0..{dd.ncols - 1}")
    if dd.c < 3:
        raise DegreeDataError("deleting a column needs c >= 3 so that the result keeps c >= 2")
    a = dd.a[:j] + dd.a[j + 1:]
    rows = [row[:j] + row[j + 1:] for row in A.entries]
    return HomogeneousMatrix(DegreeData(dd.n, dd.b, a), rows, A.field, A.minimal, A.seed)


def matrix_from_rows(dd: DegreeData, rows: Sequence[Sequence[Polynomial]],
                     field: Field = GF32003, minimal: bool = False) -> HomogeneousMatrix:
    return HomogeneousMatrix(dd, [list(r) for r in rows], field, minimal)


__all__ = [
    "DegreeData", "DegreeDataError", "HomogeneousMatrix", "MatrixDegreeError",
    "InvariantSet", "HypothesisReport",
    "binom_nonneg", "ell", "h_value", "lambda_c", "K", "dimW_formula", "nonempty",
    "lambda2_general", "invariants", "exception_family", "hypothesis_report",
    "random_matrix", "determinant", "minor", "minor_degree", "maximal_minors",
    "lower_minors", "delete_column", "matrix_from_rows", "submatrix",
]
