"""Eagon–Northcott and Buchsbaum–Rim complexes of a homogeneous matrix.

Both complexes are built with explicit polynomial differentials and checked
rather than trusted: ``verify_dd_zero`` composes differentials symbolically and
``verify_exactness`` compares kernel and image dimensions slice by slice.

Conventions
-----------
A free module is ``⊕ R(e_l)``; its basis element ``l`` lives in degree ``-e_l``.
A differential entry from basis element ``c`` of the source to basis element
``r`` of the target is a form of degree ``e_tgt[r] - e_src[c]``.

Basis labels of the wedge terms ``∧^{t+k} G* ⊗ S_k F ⊗ ∧^t F`` are pairs
``(S, mu)``: ``S`` a sorted tuple of 0-based column indices, ``mu`` a sorted tuple
of 1-based row indices (a multiset).  Both run in lexicographic order.  The
interior differential is

    y_S ⊗ f^mu  ->  sum_l sum_{i in supp mu} (-1)^l f_{i, s_l} y_{S - s_l} ⊗ f^{mu - e_i}

with coefficient 1 per distinct index ``i`` (the reduced-sum convention).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import factorial
from typing import Hashable, NamedTuple, Sequence

import numpy as np

from .detmodel import HomogeneousMatrix, binom_nonneg, maximal_minors, minor
from .exactalg import DenseMatrix, Field, rank
from .gradedpoly import Polynomial, mult_triplets, slice_dim


class Label(NamedTuple):
    """Basis tag.  ``kind`` is ``unit`` (R), ``row`` (e_i of F*), ``col`` (y_j of G*) or ``wedge``."""

    kind: str
    S: tuple[int, ...] = ()
    mu: tuple[int, ...] = ()

    def __str__(self):
        if self.kind == "unit":
            return "1"
        if self.kind == "row":
            return f"e{self.mu[0]}"
        if self.kind == "col":
            return f"y{self.S[0]}"
        s = "y" + "".join(map(str, self.S))
        return s + ("⊗f^" + "".join(map(str, self.mu)) if self.mu else "")


@dataclass(frozen=True)
class GradedFreeModule:
    twists: tuple[int, ...]
    labels: tuple[Hashable, ...]

    def __post_init__(self):
        if len(self.twists) != len(self.labels):
            raise ValueError("one twist per basis label")

    @property
    def rank(self) -> int:
        return len(self.twists)

    def slice_dim(self, n: int, v: int) -> int:
        return sum(binom_nonneg(v + e + n, n) for e in self.twists)

    def offsets(self, n: int, v: int) -> list[int]:
        out, acc = [], 0
        for e in self.twists:
            out.append(acc)
            acc += slice_dim(n, v + e)
        out.append(acc)
        return out

    def index(self) -> dict:
        return {lab: k for k, lab in enumerate(self.labels)}


class PolyMatrix:
    """Sparse matrix of homogeneous polynomials: {(row, col): nonzero entry}."""

    __slots__ = ("rows", "cols", "entries", "nvars", "field")

    def __init__(self, rows: int, cols: int, entries: dict[tuple[int, int], Polynomial],
                 nvars: int, field: Field):
        self.rows, self.cols = rows, cols
        self.entries = {k: p for k, p in entries.items() if not p.is_zero()}
        self.nvars, self.field = nvars, field

    def compose(self, other: "PolyMatrix") -> "PolyMatrix":
        """``self ∘ other`` (apply ``other`` first)."""
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        by_row: dict[int, list[tuple[int, Polynomial]]] = {}
        for (p, c), g in other.entries.items():
            by_row.setdefault(p, []).append((c, g))
        out: dict[tuple[int, int], Polynomial] = {}
        for (r, p), f in self.entries.items():
            for c, g in by_row.get(p, ()):
                prod = f * g
                out[(r, c)] = out[(r, c)] + prod if (r, c) in out else prod
        return PolyMatrix(self.rows, other.cols, out, self.nvars, self.field)

    def is_zero(self) -> bool:
        return not self.entries

    def with_entry(self, r: int, c: int, p: Polynomial) -> "PolyMatrix":
        e = dict(self.entries)
        e[(r, c)] = p
        return PolyMatrix(self.rows, self.cols, e, self.nvars, self.field)

    def slice(self, v: int, src: GradedFreeModule, tgt: GradedFreeModule) -> DenseMatrix:
        """Degree-v component, from ``src_v`` to ``tgt_v``."""
        n = self.nvars - 1
        so, to = src.offsets(n, v), tgt.offsets(n, v)
        rs, cs, vs = [], [], []
        for (r, c), p in self.entries.items():
            rr, cc, vv = mult_triplets(p, v + src.twists[c])
            if len(rr) == 0:
                continue
            rs.append(rr + to[r])
            cs.append(cc + so[c])
            vs.append(vv)
        if not rs:
            return DenseMatrix.zeros(to[-1], so[-1], self.field)
        if self.field.is_prime:
            vals = np.concatenate(vs)
        else:
            vals = [x for chunk in vs for x in chunk]
        return DenseMatrix.from_triplets(to[-1], so[-1], np.concatenate(rs), np.concatenate(cs),
                                         vals, self.field)

    def constant_part(self) -> DenseMatrix:
        """Matrix of the degree-0 entries (the map tensored with R/m)."""
        zero = (0,) * self.nvars
        rows, cols, vals = [], [], []
        for (r, c), p in self.entries.items():
            if p.degree == 0:
                rows.append(r)
                cols.append(c)
                vals.append(p.coefficient(zero))
        return DenseMatrix.from_triplets(self.rows, self.cols, rows, cols, vals, self.field)

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols}, {len(self.entries)} nonzero)"


class GradedFreeComplex:
    """``C_0 <- C_1 <- ... <- C_m`` with ``differential(k): C_k -> C_{k-1}``."""

    def __init__(self, name: str, modules: Sequence[GradedFreeModule],
                 differentials: Sequence[PolyMatrix], n: int, field: Field):
        if len(differentials) != len(modules) - 1:
            raise ValueError("need one differential between consecutive modules")
        for k, d in enumerate(differentials, start=1):
            if (d.rows, d.cols) != (modules[k - 1].rank, modules[k].rank):
                raise ValueError(f"differential {k} has the wrong shape")
        self.name = name
        self.modules = list(modules)
        self._diffs = list(differentials)
        self.n = n
        self.field = field
        self._rank_cache: dict[tuple[int, int], int] = {}

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def differential(self, k: int) -> PolyMatrix:
        return self._diffs[k - 1]

    def ranks(self) -> list[int]:
        return [m.rank for m in self.modules]

    def twists(self) -> list[tuple[int, ...]]:
        return [m.twists for m in self.modules]

    def with_differential(self, k: int, d: PolyMatrix) -> "GradedFreeComplex":
        diffs = list(self._diffs)
        diffs[k - 1] = d
        return GradedFreeComplex(self.name, self.modules, diffs, self.n, self.field)

    def slice_matrix(self, k: int, v: int) -> DenseMatrix:
        return self.differential(k).slice(v, self.modules[k], self.modules[k - 1])

    def rank_at(self, k: int, v: int) -> int:
        key = (k, v)
        if key not in self._rank_cache:
            if not 1 <= k <= self.length:
                self._rank_cache[key] = 0
            else:
                self._rank_cache[key] = rank(self.slice_matrix(k, v))
        return self._rank_cache[key]

    def max_twist(self) -> int:
        return max(abs(e) for m in self.modules for e in m.twists)

    def lowest_degree(self) -> int:
        return min(-max(m.twists) for m in self.modules if m.rank)

    def __repr__(self):
        shape = " <- ".join(f"{m.rank}" for m in self.modules)
        return f"GradedFreeComplex({self.name}: {shape})"


# -- construction --------------------------------------------------------------------


def _wedge_labels(ncols: int, size: int, t: int, k: int) -> list[Label]:
    return [Label("wedge", S, mu)
            for S in itertools.combinations(range(ncols), size)
            for mu in itertools.combinations_with_replacement(range(1, t + 1), k)]


def _wedge_twist(A: HomogeneousMatrix, lab: Label) -> int:
    dd = A.dd
    return -sum(dd.a[j] for j in lab.S) + sum(dd.b[i - 1] for i in lab.mu) + sum(dd.b)


def _wedge_module(A: HomogeneousMatrix, size: int, k: int) -> GradedFreeModule:
    labels = _wedge_labels(A.dd.ncols, size, A.t, k)
    return GradedFreeModule(tuple(_wedge_twist(A, lab) for lab in labels), tuple(labels))


def _contraction(A: HomogeneousMatrix, src: GradedFreeModule, tgt: GradedFreeModule) -> PolyMatrix:
    """The interior Eagon–Northcott/Buchsbaum–Rim differential between wedge terms."""
    index = tgt.index()
    entries = {}
    for c, lab in enumerate(src.labels):
        for l, s in enumerate(lab.S):
            rest = lab.S[:l] + lab.S[l + 1:]
            for i in sorted(set(lab.mu)):
                f = A.entry(i, s)
                if f.is_zero():
                    continue
                mu = list(lab.mu)
                mu.remove(i)
                r = index[Label("wedge", rest, tuple(mu))]
                entries[(r, c)] = -f if l % 2 else f
    return PolyMatrix(tgt.rank, src.rank, entries, A.nvars, A.field)


def build_eagon_northcott(A: HomogeneousMatrix) -> GradedFreeComplex:
    """Resolution candidate of R/I_t(A): R <- ∧^t G*⊗∧^t F <- ... <- ∧^{t+c-1} G*⊗S_{c-1}F⊗∧^t F."""
    t, c = A.t, A.c
    unit = GradedFreeModule((0,), (Label("unit"),))
    modules = [unit] + [_wedge_module(A, t + k, k) for k in range(c)]
    minors = dict(maximal_minors(A))
    d1 = PolyMatrix(1, modules[1].rank,
                    {(0, col): minors[lab.S] for col, lab in enumerate(modules[1].labels)},
                    A.nvars, A.field)
    diffs = [d1] + [_contraction(A, modules[k + 1], modules[k]) for k in range(1, c)]
    return GradedFreeComplex("EN", modules, diffs, A.n, A.field)


def build_buchsbaum_rim(A: HomogeneousMatrix) -> GradedFreeComplex:
    """Resolution candidate of M = coker φ*: F* <- G* <- ∧^{t+1}G*⊗∧^t F <- ... ."""
    dd, t, c = A.dd, A.t, A.c
    Fstar = GradedFreeModule(tuple(-b for b in dd.b), tuple(Label("row", (), (i,)) for i in range(1, t + 1)))
    Gstar = GradedFreeModule(tuple(-a for a in dd.a), tuple(Label("col", (j,)) for j in range(dd.ncols)))
    tail = [_wedge_module(A, t + k + 1, k) for k in range(c - 1)]
    modules = [Fstar, Gstar] + tail

    d1 = PolyMatrix(t, dd.ncols,
                    {(i - 1, j): A.entry(i, j) for i in range(1, t + 1) for j in range(dd.ncols)},
                    A.nvars, A.field)
    minors = dict(maximal_minors(A))
    e2 = {}
    for col, lab in enumerate(tail[0].labels):
        for l, s in enumerate(lab.S):
            m = minors[lab.S[:l] + lab.S[l + 1:]]
            e2[(s, col)] = -m if l % 2 else m
    d2 = PolyMatrix(dd.ncols, tail[0].rank, e2, A.nvars, A.field)
    diffs = [d1, d2] + [_contraction(A, modules[k + 1], modules[k]) for k in range(2, c)]
    return GradedFreeComplex("BR", modules, diffs, A.n, A.field)


# -- verification -------------------------------------------------------------------


def verify_dd_zero(cx: GradedFreeComplex) -> bool:
    return all(cx.differential(k - 1).compose(cx.differential(k)).is_zero()
               for k in range(2, cx.length + 1))


@dataclass(frozen=True)
class ExactnessFailure:
    position: int
    degree: int
    kernel_dim: int
    image_rank: int


@dataclass(frozen=True)
class ExactnessReport:
    bound: int
    checked: int
    failures: tuple[ExactnessFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def default_bound(cx: GradedFreeComplex) -> int:
    return cx.max_twist() + 2


def verify_exactness(cx: GradedFreeComplex, v_max: int | None = None) -> ExactnessReport:
    """Homology at positions 1..m vanishes in every degree up to ``v_max``.

    Position m is included: there the check is injectivity of the last map.
    """
    if v_max is None:
        v_max = default_bound(cx)
    if v_max < 0:
        raise ValueError("v_max must be nonnegative")
    failures, checked = [], 0
    n = cx.n
    for v in range(cx.lowest_degree(), v_max + 1):
        for k in range(1, cx.length + 1):
            dim_k = cx.modules[k].slice_dim(n, v)
            if dim_k == 0:
                continue
            checked += 1
            ker = dim_k - cx.rank_at(k, v)
            img = cx.rank_at(k + 1, v)
            if ker != img:
                failures.append(ExactnessFailure(k, v, ker, img))
    return ExactnessReport(v_max, checked, tuple(failures))


# -- Hilbert data -----------------------------------------------------------------------


def hilbert_from_complex(cx: GradedFreeComplex, v: int) -> int:
    return sum((-1) ** k * m.slice_dim(cx.n, v) for k, m in enumerate(cx.modules))


def _binomial_poly(shift: int, n: int) -> list[Fraction]:
    """Coefficients (low to high) of v -> C(v + shift + n, n) as a polynomial in v."""
    coeffs = [Fraction(1)]
    for i in range(1, n + 1):
        # multiply by (v + shift + i)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for d, x in enumerate(coeffs):
            nxt[d] += x * (shift + i)
            nxt[d + 1] += x
        coeffs = nxt
    nf = factorial(n)
    return [x / nf for x in coeffs]


def _trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def evaluate(coeffs: Sequence[Fraction], v) -> Fraction:
    out = Fraction(0)
    for x in reversed(coeffs):
        out = out * v + x
    return out


@dataclass(frozen=True)
class HilbertData:
    coefficients: tuple[Fraction, ...]        # low to high degree
    values: dict[int, int] = dc_field(compare=False)
    scheme_dim: int = -1
    degree: int = 0
    genus: int | None = None                  # arithmetic genus 1 - p(0), curves only
    stabilization_degree: int | None = None

    def __call__(self, v: int) -> Fraction:
        return evaluate(self.coefficients, v)

    def format(self, var: str = "v") -> str:
        terms = []
        for d in range(len(self.coefficients) - 1, -1, -1):
            x = self.coefficients[d]
            if x == 0:
                continue
            mag = abs(x)
            coeff = "" if (mag == 1 and d > 0) else str(mag)
            mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
            body = coeff + ("*" if coeff and mono and mag.denominator != 1 else "") + mono
            terms.append(("-" if x < 0 else "+", body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def hilbert_polynomial(cx: GradedFreeComplex, v_max: int | None = None) -> HilbertData:
    n = cx.n
    total = [Fraction(0)] * (n + 1)
    for k, m in enumerate(cx.modules):
        sign = -1 if k % 2 else 1
        for e in m.twists:
            for d, x in enumerate(_binomial_poly(e, n)):
                total[d] += sign * x
    coeffs = _trim(total)
    dim = len(coeffs) - 1
    degree = int(coeffs[-1] * factorial(dim)) if coeffs else 0
    genus = int(1 - coeffs[0]) if dim == 1 else None

    if v_max is None:
        v_max = default_bound(cx)
    values = {v: hilbert_from_complex(cx, v) for v in range(0, v_max + 1)}
    stab = None
    for v in range(v_max, -1, -1):
        if values[v] != evaluate(coeffs, v):
            break
        stab = v
    return HilbertData(tuple(coeffs), values, dim, degree, genus, stab)


# -- the tau comparison map ----------------------------------------------------------


def reduced_sum(mu: Sequence[int]) -> list[tuple[tuple[int, ...], int]]:
    """τ'(f^mu) = sum over distinct j in mu of f^{mu - e_j} ⊗ f_j, coefficient 1 each."""
    out = []
    for j in sorted(set(mu)):
        rest = list(mu)
        rest.remove(j)
        out.append((tuple(rest), j))
    return out


@dataclass
class ChainMap:
    source: GradedFreeComplex
    target: GradedFreeComplex
    maps: list[PolyMatrix]           # maps[p]: source C_p -> target C_p

    def with_map(self, p: int, m: PolyMatrix) -> "ChainMap":
        maps = list(self.maps)
        maps[p] = m
        return ChainMap(self.source, self.target, maps)


def tensor_with_F(cx: GradedFreeComplex, A: HomogeneousMatrix) -> GradedFreeComplex:
    """``cx ⊗ F`` with F = ⊕ R(b_i); basis (label, i) at index label_index * t + (i - 1)."""
    t, b = A.t, A.dd.b
    modules = []
    for m in cx.modules:
        twists = tuple(e + b[i] for e in m.twists for i in range(t))
        labels = tuple((lab, i + 1) for lab in m.labels for i in range(t))
        modules.append(GradedFreeModule(twists, labels))
    diffs = []
    for k in range(1, cx.length + 1):
        d = cx.differential(k)
        e = {(r * t + i, c * t + i): p for (r, c), p in d.entries.items() for i in range(t)}
        diffs.append(PolyMatrix(d.rows * t, d.cols * t, e, d.nvars, d.field))
    return GradedFreeComplex(cx.name + "⊗F", modules, diffs, cx.n, cx.field)


# With τ_0 signed as below, the square at position 2 commutes only if the
# reduced-sum levels carry an overall -1; every later square is sign-homogeneous.
_TAU_SIGN = -1


def build_tau(A: HomogeneousMatrix) -> ChainMap:
    """Chain map from the EN complex of A to (BR complex of M) ⊗ F.

    τ_{-1}: 1 -> Σ e_i ⊗ f_i.  τ_0: y_S -> Σ_l Σ_i (-1)^(l+i) Δ_{i, S - s_l} y_{s_l} ⊗ f_i,
    where Δ_{i, T} is the (t-1)-minor omitting row i (0-based i, l); with this sign
    the first square is a Laplace expansion.  Higher levels are id ⊗ τ'_k with τ' the
    reduced sum; they carry the sign ``_TAU_SIGN`` that makes the second square commute.
    """
    t, nv, fld = A.t, A.nvars, A.field
    en = build_eagon_northcott(A)
    tgt = tensor_with_F(build_buchsbaum_rim(A), A)
    one = Polynomial.constant(1, nv, fld)

    maps = [PolyMatrix(tgt.modules[0].rank, 1, {(i * t + i, 0): one for i in range(t)}, nv, fld)]

    e0 = {}
    rows_all = range(t)
    for col, lab in enumerate(en.modules[1].labels):
        for l, s in enumerate(lab.S):
            rest = lab.S[:l] + lab.S[l + 1:]
            for i in range(t):
                m = minor(A, [r for r in rows_all if r != i], rest)
                if m.is_zero():
                    continue
                key = (s * t + i, col)
                m = -m if (l + i) % 2 else m
                e0[key] = e0[key] + m if key in e0 else m
    maps.append(PolyMatrix(tgt.modules[1].rank, en.modules[1].rank, e0, nv, fld))

    unit = one if _TAU_SIGN == 1 else -one
    for p in range(2, en.length + 1):
        index = tgt.modules[p].index()
        e = {}
        for col, lab in enumerate(en.modules[p].labels):
            for rest, j in reduced_sum(lab.mu):
                e[(index[(Label("wedge", lab.S, rest), j)], col)] = unit
        maps.append(PolyMatrix(tgt.modules[p].rank, en.modules[p].rank, e, nv, fld))
    return ChainMap(en, tgt, maps)


@dataclass(frozen=True)
class TauReport:
    failing_squares: tuple[int, ...]
    last_injective: bool

    @property
    def commutes(self) -> bool:
        return not self.failing_squares

    @property
    def ok(self) -> bool:
        return self.commutes and self.last_injective


def verify_tau(tm: ChainMap) -> TauReport:
    """Check d^tgt_p ∘ τ_p = τ_{p-1} ∘ d^src_p for every p, and τ_top ⊗ k injective."""
    src, tgt = tm.source, tm.target
    failing = []
    for p in range(1, src.length + 1):
        lhs = tgt.differential(p).compose(tm.maps[p])
        rhs = tm.maps[p - 1].compose(src.differential(p))
        diff = {}
        for key in set(lhs.entries) | set(rhs.entries):
            a = lhs.entries.get(key)
            b = rhs.entries.get(key)
            if a is None or b is None or a != b:
                diff[key] = True
        if diff:
            failing.append(p)
    top = tm.maps[src.length].constant_part()
    injective = rank(top) == top.cols
    return TauReport(tuple(failing), injective)


__all__ = [
    "Label", "GradedFreeModule", "PolyMatrix", "GradedFreeComplex",
    "build_eagon_northcott", "build_buchsbaum_rim", "verify_dd_zero",
    "ExactnessFailure", "ExactnessReport", "default_bound", "verify_exactness",
    "hilbert_from_complex", "HilbertData", "hilbert_polynomial", "evaluate",
    "reduced_sum", "ChainMap", "tensor_with_F", "build_tau", "TauReport", "verify_tau",
]
