"""Homogeneous polynomials in x0..xn over a :class:`~detdeform.exactalg.Field`.

Monomials are exponent tuples.  Every graded slice R_v has a fixed basis in
graded lexicographic order (x0 > x1 > ...), so matrices built from slices are
reproducible run to run.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

import numpy as np

from .exactalg import GF32003, DenseMatrix, Field

Monomial = tuple[int, ...]

MAX_EXPONENT = 1 << 16


# -- monomial bases -----------------------------------------------------------


def monomial_basis(n: int, v: int) -> list[Monomial]:
    """Monomials of degree ``v`` in ``n + 1`` variables, grlex with x0 > x1 > ...

    Empty for negative ``v``; otherwise ``comb(v + n, n)`` elements.
    """
    if v < 0:
        return []
    return [tuple(int(e) for e in row) for row in _table(n + 1, v)[0]]


@lru_cache(maxsize=None)
def _table(nvars: int, v: int):
    """(exponent array, sorted keys, argsort order) for the degree-v slice."""
    if v < 0:
        return np.zeros((0, nvars), dtype=np.int64), np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    # combinations_with_replacement walks multisets of variable indices in
    # lexicographic order, which is descending lex order on exponent vectors.
    rows = []
    for combo in itertools.combinations_with_replacement(range(nvars), v):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        rows.append(e)
    exps = np.array(rows, dtype=np.int64).reshape(-1, nvars)
    keys = _encode(exps, v + 1)
    order = np.argsort(keys, kind="stable")
    exps.setflags(write=False)
    return exps, keys[order], order


def _encode(exps: np.ndarray, base: int) -> np.ndarray:
    nvars = exps.shape[1]
    weights = base ** np.arange(nvars - 1, -1, -1, dtype=np.int64)
    return exps @ weights


def slice_dim(n: int, v: int) -> int:
    return comb(v + n, n) if v >= 0 else 0


def monomial_index(n: int, v: int, exps) -> np.ndarray:
    """Positions of the degree-``v`` monomials ``exps`` (k x (n+1)) in the slice basis."""
    exps = np.asarray(exps, dtype=np.int64).reshape(-1, n + 1)
    _, sorted_keys, order = _table(n + 1, v)
    keys = _encode(exps, v + 1)
    pos = np.searchsorted(sorted_keys, keys)
    return order[pos]


# -- polynomials ----------------------------------------------------------------


class Polynomial:
    """Sparse polynomial: mapping monomial -> nonzero coefficient.

    ``degree`` is the declared degree.  It is inferred from the terms when not
    given; a zero polynomial may carry any declared degree, and a mixed-degree
    polynomial (which only the parser produces) has ``degree is None``.
    """

    __slots__ = ("terms", "nvars", "field", "_degree")

    def __init__(self, terms: Mapping[Monomial, object], nvars: int,
                 field: Field = GF32003, degree: int | None = None):
        clean = {}
        for mono, c in terms.items():
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has wrong length for {nvars} variables")
            c = field(c)
            if c:
                clean[tuple(mono)] = c
        self.terms = clean
        self.nvars = nvars
        self.field = field
        if degree is None and clean:
            degs = {sum(m) for m in clean}
            degree = degs.pop() if len(degs) == 1 else None
        elif degree is not None and clean and any(sum(m) != degree for m in clean):
            raise ValueError(f"polynomial is not homogeneous of degree {degree}")
        self._degree = degree

    @classmethod
    def zero(cls, nvars: int, field: Field = GF32003, degree: int | None = None) -> "Polynomial":
        return cls({}, nvars, field, degree)

    @classmethod
    def constant(cls, c, nvars: int, field: Field = GF32003) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars, field, 0)

    @classmethod
    def variable(cls, i: int, nvars: int, field: Field = GF32003) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars, field, 1)

    @classmethod
    def monomial(cls, mono: Monomial, field: Field = GF32003, coeff=1) -> "Polynomial":
        return cls({tuple(mono): coeff}, len(mono), field, sum(mono))

    @property
    def degree(self) -> int | None:
        return self._degree

    @property
    def n(self) -> int:
        return self.nvars - 1

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(m) for m in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return d is None or degs.pop() == d

    def with_degree(self, d: int) -> "Polynomial":
        return Polynomial(self.terms, self.nvars, self.field, d)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if not self.terms:
            return other == 0
        return NotImplemented

    __hash__ = None

    def _check(self, other: "Polynomial"):
        if other.nvars != self.nvars or other.field != self.field:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        f = self.field
        for m, c in other.terms.items():
            out[m] = f(out.get(m, 0) + c)
        return Polynomial(out, self.nvars, f, _sum_degree(self, other))

    def __neg__(self) -> "Polynomial":
        f = self.field
        return Polynomial({m: f(-c) for m, c in self.terms.items()}, self.nvars, f, self._degree)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        f = self.field
        c = f(c)
        return Polynomial({m: f(x * c) for m, x in self.terms.items()}, self.nvars, f, self._degree)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        return multiply(self, other)

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(mono), self.field.zero())

    def coefficient_vector(self, d: int | None = None) -> list:
        """Coefficients in the grlex basis of the degree-d slice."""
        d = self._degree if d is None else d
        basis = monomial_basis(self.nvars - 1, d)
        return [self.coefficient(m) for m in basis]

    @classmethod
    def from_vector(cls, vec, n: int, d: int, field: Field = GF32003) -> "Polynomial":
        basis = monomial_basis(n, d)
        return cls({m: c for m, c in zip(basis, vec) if c}, n + 1, field, d)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r}, deg={self._degree})"


def _sum_degree(p: Polynomial, q: Polynomial) -> int | None:
    if p._degree == q._degree:
        return p._degree
    if not p.terms:
        return q._degree
    if not q.terms:
        return p._degree
    return None


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    """Exact product; homogeneous of degree deg p + deg q when both factors are."""
    f = p.field
    deg = None
    if p._degree is not None and q._degree is not None:
        deg = p._degree + q._degree
    if not p.terms or not q.terms:
        return Polynomial.zero(p.nvars, f, deg)
    if f.is_prime and len(p.terms) * len(q.terms) > 64:
        return _multiply_numpy(p, q, deg)
    out: dict[Monomial, object] = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return Polynomial(out, p.nvars, f, deg)


def _multiply_numpy(p: Polynomial, q: Polynomial, deg: int | None) -> Polynomial:
    prime = p.field.p
    e1 = np.array(list(p.terms), dtype=np.int64)
    e2 = np.array(list(q.terms), dtype=np.int64)
    c1 = np.array(list(p.terms.values()), dtype=np.int64)
    c2 = np.array(list(q.terms.values()), dtype=np.int64)
    base = int(e1.sum(axis=1).max() + e2.sum(axis=1).max() + 1)
    k = (_encode(e1, base)[:, None] + _encode(e2, base)[None, :]).ravel()
    v = ((c1[:, None] * c2[None, :]) % prime).ravel()
    uniq, inv = np.unique(k, return_inverse=True)
    acc = np.zeros(uniq.size, dtype=np.int64)
    np.add.at(acc, inv, v)
    acc %= prime
    keep = acc != 0
    uniq, acc = uniq[keep], acc[keep]
    nv = p.nvars
    exps = np.empty((uniq.size, nv), dtype=np.int64)
    rem = uniq.copy()
    for i in range(nv - 1, -1, -1):
        exps[:, i] = rem % base
        rem //= base
    terms = {tuple(row): int(c) for row, c in zip(exps.tolist(), acc.tolist())}
    return Polynomial(terms, nv, p.field, deg)


def random_homogeneous(n: int, d: int, field: Field, rng) -> Polynomial:
    """Uniformly random homogeneous polynomial of degree d (zero if d < 0)."""
    if d < 0:
        return Polynomial.zero(n + 1, field, d)
    terms = {m: field.random_element(rng) for m in monomial_basis(n, d)}
    return Polynomial(terms, n + 1, field, d)


# -- slice matrices ---------------------------------------------------------------


def mult_triplets(p: Polynomial, v: int):
    """Coordinate triplets of multiplication by ``p`` from R_v to R_{v + deg p}."""
    n = p.nvars - 1
    d = p.degree
    if d is None:
        raise ValueError("multiplication slices need a homogeneous polynomial")
    if v < 0 or not p.terms:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    src = _table(n + 1, v)[0]
    nsrc = src.shape[0]
    monos = np.array(list(p.terms), dtype=np.int64)
    coeffs = list(p.terms.values())
    tgt = (src[None, :, :] + monos[:, None, :]).reshape(-1, n + 1)
    rows = monomial_index(n, v + d, tgt)
    cols = np.tile(np.arange(nsrc, dtype=np.int64), len(coeffs))
    if p.field.is_prime:
        vals = np.repeat(np.array(coeffs, dtype=np.int64), nsrc)
    else:
        vals = [c for c in coeffs for _ in range(nsrc)]
    return rows, cols, vals


def mult_slice_matrix(p: Polynomial, v: int) -> DenseMatrix:
    """Matrix of R_v -> R_{v+deg p}, m -> p*m in the grlex slice bases."""
    n = p.nvars - 1
    d = p.degree if p.degree is not None else 0
    r, c, x = mult_triplets(p, v)
    return DenseMatrix.from_triplets(slice_dim(n, v + d), slice_dim(n, v), r, c, x, p.field)


# -- text format ---------------------------------------------------------------------


class PolynomialSyntaxError(ValueError):
    """Raised for malformed polynomial text; ``pos`` is the 0-based column."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|(x)(\d+)|(\^)|(\*)|(\+)|(-)|(/))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            at = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolynomialSyntaxError(f"unexpected character {text[at]!r}", at)
        start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("var", int(m.group(3)), start))
        else:
            sym = next(g for g in m.groups()[3:] if g)
            toks.append((sym, sym, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


def parse_polynomial(text: str, n: int, field: Field = GF32003) -> Polynomial:
    """Parse ``text`` into a polynomial in x0..xn.

    Grammar: expr := ['-'] term (('+'|'-') term)*; term := coeff ('*' factor)*
    | factor ('*' factor)*; factor := 'x' uint ('^' uint)?; coeff := uint
    ('/' uint)?.  Homogeneity is *not* checked here.
    """
    toks = _tokenize(text)
    i = 0
    nvars = n + 1
    out: dict[Monomial, object] = {}

    def peek():
        return toks[i]

    def take(kind):
        nonlocal i
        tok = toks[i]
        if tok[0] != kind:
            raise PolynomialSyntaxError(f"expected {kind}, found {tok[0]}", tok[2])
        i += 1
        return tok

    def factor(exps):
        tok = take("var")
        idx = tok[1]
        if idx > n:
            raise PolynomialSyntaxError(f"unknown variable x{idx} (ring has x0..x{n})", tok[2])
        e = 1
        if peek()[0] == "^":
            take("^")
            etok = take("int")
            e = etok[1]
            if e >= MAX_EXPONENT:
                raise PolynomialSyntaxError(f"exponent {e} overflows the limit {MAX_EXPONENT}", etok[2])
        exps[idx] += e

    def term(sign):
        exps = [0] * nvars
        coeff: object = 1
        if peek()[0] == "int":
            coeff = take("int")[1]
            if peek()[0] == "/":
                slash = take("/")
                den = take("int")[1]
                if den == 0:
                    raise PolynomialSyntaxError("zero denominator", slash[2])
                coeff = Fraction(coeff, den)
        else:
            factor(exps)
        while peek()[0] == "*":
            take("*")
            factor(exps)
        m = tuple(exps)
        out[m] = out.get(m, 0) + field(sign * coeff)

    sign = 1
    if peek()[0] == "-":
        take("-")
        sign = -1
    term(sign)
    while peek()[0] in ("+", "-"):
        sign = 1 if take(peek()[0])[0] == "+" else -1
        term(sign)
    if peek()[0] != "end":
        tok = peek()
        raise PolynomialSyntaxError(f"unexpected token {tok[1]!r}", tok[2])
    return Polynomial(out, nvars, field)


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    parts = []
    basis_order = sorted(p.terms, key=lambda m: (-sum(m), [-e for e in m]))
    for mono in basis_order:
        c = p.field.to_signed(p.terms[mono])
        neg = c < 0
        c = -c if neg else c
        factors = [f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(mono) if e]
        if c != 1 or not factors:
            factors.insert(0, str(c))
        parts.append(("-" if neg else "+", "*".join(factors)))
    head_sign, head = parts[0]
    s = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def polynomials_from_text(lines: Iterable[str], n: int, field: Field = GF32003) -> list[Polynomial]:
    return [parse_polynomial(line, n, field) for line in lines]


__all__ = [
    "Monomial", "Polynomial", "PolynomialSyntaxError",
    "monomial_basis", "monomial_index", "slice_dim",
    "multiply", "random_homogeneous", "mult_triplets", "mult_slice_matrix",
    "parse_polynomial", "format_polynomial",
]
