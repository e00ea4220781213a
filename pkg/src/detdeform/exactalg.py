"""Exact linear algebra over prime fields GF(p) and the rationals.

Matrices are stored as FLINT ``nmod_mat`` / ``fmpq_mat`` objects wrapped in
:class:`DenseMatrix`.  A plain Gaussian elimination (:func:`gauss_rank`,
:func:`gauss_kernel`) over Python ints / Fractions is kept alongside; it is the
reference the FLINT-backed routines are tested against and it is what runs when
callers pass plain nested lists.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint
import numpy as np

DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """A prime field GF(p) (``p`` an odd prime below 2**31) or Q (``p is None``)."""

    p: int | None = DEFAULT_PRIME

    def __post_init__(self):
        if self.p is not None:
            if not (2 < self.p < 2**31) or not _is_prime(self.p):
                raise ValueError(f"field characteristic must be an odd prime < 2^31, got {self.p}")

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    def __call__(self, x) -> int | Fraction:
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def random_element(self, rng: random.Random):
        if self.p is None:
            raise ValueError("random elements are only drawn from prime fields")
        return rng.randrange(self.p)

    def to_signed(self, x) -> int | Fraction:
        """Symmetric representative, handy for printing: 32002 -> -1."""
        if self.p is None:
            return x
        x = int(x) % self.p
        return x - self.p if x > self.p // 2 else x

    def __str__(self):
        return "Q" if self.p is None else f"GF({self.p})"

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip()
        if text.upper() in ("Q", "QQ"):
            return cls(None)
        if text.upper().startswith("GF(") and text.endswith(")"):
            text = text[3:-1]
        return cls(int(text))


GF32003 = Field(DEFAULT_PRIME)
QQ = Field(None)


class DenseMatrix:
    """A rows x cols matrix over a :class:`Field`, immutable by convention."""

    __slots__ = ("field", "_m")

    def __init__(self, field: Field, m):
        self.field = field
        self._m = m

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = GF32003) -> "DenseMatrix":
        if field.is_prime:
            return cls(field, flint.nmod_mat(rows, cols, field.p))
        return cls(field, flint.fmpq_mat(rows, cols))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = GF32003,
                  ncols: int | None = None) -> "DenseMatrix":
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else (ncols or 0)
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        out = cls.zeros(nr, nc, field)
        m = out._m
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                x = field(x)
                if x:
                    m[i, j] = _to_flint_scalar(x, field)
        return out

    @classmethod
    def identity(cls, n: int, field: Field = GF32003) -> "DenseMatrix":
        out = cls.zeros(n, n, field)
        for i in range(n):
            out._m[i, i] = 1
        return out

    @classmethod
    def from_triplets(cls, rows: int, cols: int, r, c, v, field: Field = GF32003) -> "DenseMatrix":
        """Assemble from coordinate triplets; repeated (r, c) pairs are summed."""
        out = cls.zeros(rows, cols, field)
        m = out._m
        if field.is_prime:
            r = np.asarray(r, dtype=np.int64)
            c = np.asarray(c, dtype=np.int64)
            v = np.asarray(v, dtype=np.int64) % field.p
            if r.size == 0:
                return out
            key = r * cols + c
            uniq, inv = np.unique(key, return_inverse=True)
            if uniq.size != key.size:
                acc = np.zeros(uniq.size, dtype=np.int64)
                # values < 2^31, so chunked accumulation keeps int64 safe
                np.add.at(acc, inv, v)
                v = acc % field.p
                key = uniq
            nz = v != 0
            for k, x in zip(key[nz].tolist(), v[nz].tolist()):
                m[k // cols, k % cols] = x
        else:
            acc: dict[tuple[int, int], Fraction] = {}
            for i, j, x in zip(r, c, v):
                acc[(int(i), int(j))] = acc.get((int(i), int(j)), Fraction(0)) + Fraction(x)
            for (i, j), x in acc.items():
                if x:
                    m[i, j] = flint.fmpq(x.numerator, x.denominator)
        return out

    # basic protocol -------------------------------------------------------
    @property
    def rows(self) -> int:
        return self._m.nrows()

    @property
    def cols(self) -> int:
        return self._m.ncols()

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        return _from_flint_scalar(self._m[ij], self.field)

    def tolist(self) -> list[list]:
        return [[_from_flint_scalar(x, self.field) for x in row] for row in self._m.tolist()]

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(self.field, self._m.transpose())

    @property
    def T(self) -> "DenseMatrix":
        return self.transpose()

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return DenseMatrix.zeros(self.rows, other.cols, self.field)
        return DenseMatrix(self.field, self._m * other._m)

    def __add__(self, other: "DenseMatrix") -> "DenseMatrix":
        return DenseMatrix(self.field, self._m + other._m)

    def __sub__(self, other: "DenseMatrix") -> "DenseMatrix":
        return DenseMatrix(self.field, self._m - other._m)

    def __neg__(self) -> "DenseMatrix":
        return DenseMatrix(self.field, -self._m)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self._m == other._m

    def is_zero(self) -> bool:
        if self.rows == 0 or self.cols == 0:
            return True
        return all(not x for row in self._m.tolist() for x in row)

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product with a plain list."""
        col = DenseMatrix.from_rows([[x] for x in vec], self.field, ncols=1)
        if self.cols == 0:
            return [self.field.zero()] * self.rows
        return [row[0] for row in (self @ col).tolist()]

    def select_columns(self, idx: Sequence[int]) -> "DenseMatrix":
        out = DenseMatrix.zeros(self.rows, len(idx), self.field)
        src = self._m
        for jj, j in enumerate(idx):
            for i in range(self.rows):
                x = src[i, j]
                if x:
                    out._m[i, jj] = x
        return out

    def __repr__(self):
        return f"DenseMatrix({self.rows}x{self.cols} over {self.field})"


def _to_flint_scalar(x, field: Field):
    if field.is_prime:
        return int(x)
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _from_flint_scalar(x, field: Field):
    if field.is_prime:
        return int(x)
    return Fraction(int(x.p), int(x.q))


def _as_matrix(m, field: Field | None) -> DenseMatrix:
    if isinstance(m, DenseMatrix):
        return m
    return DenseMatrix.from_rows(m, field or GF32003)


def rank(m, field: Field | None = None) -> int:
    """Rank of ``m`` (a :class:`DenseMatrix` or nested list over ``field``)."""
    m = _as_matrix(m, field)
    if m.rows == 0 or m.cols == 0:
        return 0
    return m._m.rank()


def rref(m, field: Field | None = None) -> tuple[DenseMatrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = _as_matrix(m, field)
    if m.rows == 0 or m.cols == 0:
        return m, []
    r, rk = m._m.rref()
    out = DenseMatrix(m.field, r)
    pivots = []
    rows = r.tolist()
    for i in range(rk):
        row = rows[i]
        for j, x in enumerate(row):
            if x:
                pivots.append(j)
                break
    return out, pivots


def kernel_basis(m, field: Field | None = None) -> list[list]:
    """Basis of the right kernel {v : m v = 0}; cols - rank vectors."""
    m = _as_matrix(m, field)
    n = m.cols
    if n == 0:
        return []
    if m.rows == 0:
        f = m.field
        return [[f.one() if i == j else f.zero() for i in range(n)] for j in range(n)]
    red, pivots = rref(m)
    rows = red.tolist()
    f = m.field
    pivset = set(pivots)
    basis = []
    for fcol in (j for j in range(n) if j not in pivset):
        v = [f.zero()] * n
        v[fcol] = f.one()
        for i, pcol in enumerate(pivots):
            v[pcol] = f(-rows[i][fcol])
        basis.append(v)
    return basis


def nullity(m, field: Field | None = None) -> int:
    m = _as_matrix(m, field)
    return m.cols - rank(m)


# --------------------------------------------------------------------------
# Reference elimination on plain Python values.


def gauss_eliminate(rows: Iterable[Sequence], field: Field) -> tuple[list[list], list[int]]:
    """Row-reduce a copy of ``rows``; pivot is the first nonzero entry in each column."""
    a = [[field(x) for x in r] for r in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = field.inv(a[r][col])
        a[r] = [field(x * inv) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [field(x - f * y) for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    return a, pivots


def gauss_rank(rows: Iterable[Sequence], field: Field) -> int:
    return len(gauss_eliminate(rows, field)[1])


def gauss_kernel(rows: Sequence[Sequence], ncols: int, field: Field) -> list[list]:
    red, pivots = gauss_eliminate(rows, field)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for fcol in free:
        v = [field.zero()] * ncols
        v[fcol] = field.one()
        for i, pcol in enumerate(pivots):
            v[pcol] = field(-red[i][fcol])
        basis.append(v)
    return basis


__all__ = [
    "DEFAULT_PRIME", "Field", "GF32003", "QQ", "DenseMatrix",
    "rank", "rref", "kernel_basis", "nullity",
    "gauss_eliminate", "gauss_rank", "gauss_kernel",
]
