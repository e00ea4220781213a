"""Command-line front end.

    detdeform invariants --n 4 --b 0,0 --a 2,2,2,2
    detdeform analyze matrix.txt
    detdeform analyze --n 4 --b 0,0 --a 2,2,2,2 --random 1
    detdeform survey --count 20 --seed 0
    detdeform reproduce 5.10

Reports are JSON on stdout; diagnostics go to stderr.  Exit codes: 0 success
(refusal verdicts included), 1 a reproduction check failed, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .complexes import (
    build_buchsbaum_rim, build_eagon_northcott, build_tau, default_bound, hilbert_from_complex,
    hilbert_polynomial, verify_dd_zero, verify_exactness, verify_tau,
)
from .detmodel import (
    DegreeData, DegreeDataError, HomogeneousMatrix, MatrixDegreeError,
    hypothesis_report, invariants, nonempty, random_matrix,
)
from .exactalg import GF32003, Field
from .gradeddef import (
    COMPONENT_CERTIFIED, GRADALG_CAVEAT, GradedModulePresentation, REFUSALS,
    certificate, certificate_bound, module_slice_dim, quotient_ring, ring_slice_dim,
)
from .gradedpoly import Polynomial, PolynomialSyntaxError, parse_polynomial, slice_dim


class InputError(Exception):
    pass


# -- matrix files ----------------------------------------------------------------------


@dataclass
class MatrixFile:
    matrix: HomogeneousMatrix
    seed: int | None = None


def _int_list(text: str, what: str, lineno: int | None = None) -> list[int]:
    where = f"line {lineno}: " if lineno else ""
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise InputError(f"{where}{what} must be comma-separated integers, got {text!r}") from None


def parse_matrix_file(text: str) -> MatrixFile:
    """Parse the line-oriented matrix format; errors carry line numbers.

    Lines: ``n <int>``, ``field <prime|Q>``, ``b <ints>``, ``a <ints>``,
    ``minimal``, ``seed <int>``, ``entry <i> <j> <polynomial>`` with 1-based
    row i and 0-based column j.  ``#`` starts a comment.
    """
    header: dict = {"field": GF32003, "minimal": False, "seed": None}
    entries: list[tuple[int, int, int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "n":
            try:
                header["n"] = int(rest)
            except ValueError:
                raise InputError(f"line {lineno}: n must be an integer, got {rest!r}") from None
        elif key == "field":
            try:
                header["field"] = Field.parse(rest)
            except ValueError as exc:
                raise InputError(f"line {lineno}: bad field {rest!r}: {exc}") from None
        elif key in ("b", "a"):
            header[key] = _int_list(rest, key, lineno)
        elif key == "minimal":
            header["minimal"] = True
        elif key == "seed":
            try:
                header["seed"] = int(rest)
            except ValueError:
                raise InputError(f"line {lineno}: seed must be an integer") from None
        elif key == "entry":
            parts = rest.split(None, 2)
            if len(parts) < 3:
                raise InputError(f"line {lineno}: expected 'entry <i> <j> <polynomial>'")
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError:
                raise InputError(f"line {lineno}: entry indices must be integers") from None
            entries.append((lineno, i, j, parts[2]))
        else:
            raise InputError(f"line {lineno}: unknown keyword {key!r}")

    for key in ("n", "b", "a"):
        if key not in header:
            raise InputError(f"missing '{key}' line")
    try:
        dd = DegreeData(header["n"], header["b"], header["a"])
    except DegreeDataError as exc:
        raise InputError(str(exc)) from None
    fld = header["field"]
    nv = dd.n + 1
    rows = [[Polynomial.zero(nv, fld, dd.entry_degree(i, j)) for j in range(dd.ncols)]
            for i in range(1, dd.t + 1)]
    seen = set()
    for lineno, i, j, poly_text in entries:
        if not (1 <= i <= dd.t and 0 <= j < dd.ncols):
            raise InputError(f"line {lineno}: entry ({i}, {j}) outside rows 1..{dd.t}, columns 0..{dd.ncols - 1}")
        if (i, j) in seen:
            raise InputError(f"line {lineno}: entry ({i}, {j}) given twice")
        seen.add((i, j))
        try:
            f = parse_polynomial(poly_text, dd.n, fld)
        except PolynomialSyntaxError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
        d = dd.entry_degree(i, j)
        if not f.is_zero() and not f.is_homogeneous(d):
            raise InputError(f"line {lineno}: entry ({i}, {j}) = {poly_text.strip()} is not homogeneous "
                             f"of degree a_{j} - b_{i} = {d}")
        rows[i - 1][j] = f.with_degree(d)
    try:
        A = HomogeneousMatrix(dd, rows, fld, header["minimal"], header["seed"])
    except MatrixDegreeError as exc:
        raise InputError(str(exc)) from None
    return MatrixFile(A, header["seed"])


def format_matrix_file(A: HomogeneousMatrix) -> str:
    dd = A.dd
    lines = [f"n {dd.n}", f"field {A.field.p if A.field.is_prime else 'Q'}",
             "b " + ",".join(map(str, dd.b)), "a " + ",".join(map(str, dd.a))]
    if A.minimal:
        lines.append("minimal")
    if A.seed is not None:
        lines.append(f"seed {A.seed}")
    for i in range(1, dd.t + 1):
        for j in range(dd.ncols):
            f = A.entry(i, j)
            if not f.is_zero():
                lines.append(f"entry {i} {j} {f}")
    return "\n".join(lines) + "\n"


# -- reports ---------------------------------------------------------------------------------


def _q(x: Fraction | int) -> str | int:
    """Exact rational rendering: integers stay integers, others become 'p/q'."""
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def invariants_report(dd: DegreeData) -> dict:
    inv = invariants(dd)
    hyp = hypothesis_report(dd)
    return {
        "n": dd.n, "t": dd.t, "c": dd.c, "b": list(dd.b), "a": list(dd.a),
        "ell": {str(k): v for k, v in inv.ell.items()},
        "h": {str(k): v for k, v in inv.h.items()},
        "lambda_c": inv.lambda_c,
        "K": {str(k): v for k, v in inv.K.items()},
        "dimW_formula": inv.dimW_formula,
        "nonempty": hyp.nonempty,
        "exception_family": hyp.exception_family,
        "hypotheses": {k: getattr(hyp, k) for k in (
            "in_proven_range_2_11", "thm_2_3_applies", "conj_2_2_hypotheses",
            "cor_5_6_applies", "cor_5_9_applies", "conj_2_4_applies")},
    }


def _codim_dict(e) -> dict | None:
    if e is None:
        return None
    return {"label": e.label, "dim": e.dim, "codim": e.codim, "v_max": e.v_max,
            "values": list(e.values), "heuristic": e.heuristic}


def analyze_matrix(A: HomogeneousMatrix, timing: bool = False, deletion: bool = True) -> dict:
    """The full pipeline as one report dictionary."""
    started = time.perf_counter()
    dd = A.dd
    report = invariants_report(dd)
    report["field"] = str(A.field)
    report["seed"] = A.seed
    report["minimal"] = A.minimal

    en, br = build_eagon_northcott(A), build_buchsbaum_rim(A)
    bound = default_bound(en)
    report["en_ranks"] = en.ranks()
    report["br_ranks"] = br.ranks()
    report["dd_zero_en"] = verify_dd_zero(en)
    report["dd_zero_br"] = verify_dd_zero(br)
    ex_en, ex_br = verify_exactness(en), verify_exactness(br)
    report["exact_en"] = ex_en.ok
    report["exact_br"] = ex_br.ok
    report["exactness_bound_en"] = ex_en.bound
    report["exactness_bound_br"] = ex_br.bound
    tau = verify_tau(build_tau(A))
    report["tau_commutes"] = tau.commutes
    report["tau_top_injective"] = tau.last_injective

    hp = hilbert_polynomial(en)
    report["hilbert_polynomial"] = hp.format()
    report["hilbert_coefficients"] = [_q(x) for x in hp.coefficients]
    report["scheme_dim"] = hp.scheme_dim
    report["degree"] = hp.degree
    report["genus"] = hp.genus
    report["stabilization_degree"] = hp.stabilization_degree

    Q = quotient_ring(A, en)
    M = GradedModulePresentation(A, br)
    tr = certificate(A, deletion=deletion, en=en, br=br, Q=Q, M=M)
    report["hilbert_agreement_A"] = all(ring_slice_dim(Q, v) == hilbert_from_complex(en, v)
                                        for v in range(0, bound + 1))
    report["hilbert_agreement_M"] = all(module_slice_dim(M, v) == hilbert_from_complex(br, v)
                                        for v in range(0, default_bound(br) + 1))
    report.update({
        "hom_G_M": tr.hom_G_M, "hom_F_M": tr.hom_F_M, "hom_M_M": tr.hom_M_M,
        "ext1_R": tr.ext1_R, "hom_IX_A": tr.hom_IX_A,
        "perturbation_dim": tr.perturbation_dim, "rank_edge": tr.rank_edge,
        "ext1_A": tr.ext1_A, "formula_lambda": tr.formula_lambda,
        "tangent_excess": tr.tangent_excess,
        "verdict": tr.verdict, "inner_verdict": tr.inner_verdict, "refusal": tr.refusal,
        "codim_I_t": _codim_dict(tr.codim_It), "codim_I_t_minus_1": _codim_dict(tr.codim_It1),
        "column_deletion": None if tr.column_deletion is None else [_codim_dict(e) for e in tr.column_deletion],
    })
    if tr.refusal == "NOT_STANDARD_DETERMINANTAL":
        report["banner"] = ("NOT_STANDARD_DETERMINANTAL: codim I_t(A) differs from c by the heuristic; "
                            "numbers are reported but no certificate is issued")
    elif tr.verdict == GRADALG_CAVEAT:
        report["banner"] = "GRADALG_CAVEAT: n = c, read Hilb as the postulation Hilbert scheme GradAlg"
    if timing:
        report["timing_seconds"] = round(time.perf_counter() - started, 3)
    return report


def emit(report: dict, out=None):
    out = out or sys.stdout
    json.dump(report, out, indent=2, sort_keys=False)
    out.write("\n")


# -- survey --------------------------------------------------------------------------------


def instance_cost(A: HomogeneousMatrix) -> int:
    """Largest slice dimension the full pipeline touches (a proxy for elimination cost)."""
    n = A.n
    en, br = build_eagon_northcott(A), build_buchsbaum_rim(A)
    worst = slice_dim(n, certificate_bound(A))
    for cx in (en, br):
        v = default_bound(cx)
        worst = max(worst, max(m.slice_dim(n, v) for m in cx.modules))
    return worst


def draw_degree_data(rng: random.Random, ts: Sequence[int], cs: Sequence[int],
                     excess: Sequence[int], max_degree: int, max_tries: int = 1000) -> DegreeData:
    """Random nonempty degree data with b_1 = 0 and every entry degree at most ``max_degree``."""
    for _ in range(max_tries):
        t, c, e = rng.choice(list(ts)), rng.choice(list(cs)), rng.choice(list(excess))
        b = sorted([0] + [rng.randint(0, 1) for _ in range(t - 1)])
        a = sorted(rng.randint(0, max_degree) for _ in range(t + c - 1))
        try:
            dd = DegreeData(c + e, b, a)
        except DegreeDataError:
            continue
        if nonempty(dd):
            return dd
    raise InputError("could not draw nonempty degree data in the given ranges")


@dataclass
class SurveyRow:
    index: int
    dd: DegreeData
    seed: int
    formula: int
    ext1_R: int
    hom_IX_A: int
    ext1_A: int
    verdict: str

    @property
    def eligible(self) -> bool:
        return self.verdict not in REFUSALS

    @property
    def agrees(self) -> bool:
        return self.ext1_R == self.formula


def survey(count: int, seed: int, ts=(2, 3), cs=(2, 3), excess=(1, 2), max_degree: int = 3,
           max_cost: int = 2500, minimal: bool = False) -> tuple[list[SurveyRow], int]:
    """Random instances; returns the rows and the number of draws skipped by the cost cap."""
    rng = random.Random(seed)
    rows, skipped = [], 0
    while len(rows) < count:
        dd = draw_degree_data(rng, ts, cs, excess, max_degree)
        mseed = rng.randrange(2**31)
        A = random_matrix(dd, GF32003, mseed, minimal)
        if instance_cost(A) > max_cost:
            skipped += 1
            continue
        tr = certificate(A, deletion=False)
        rows.append(SurveyRow(len(rows) + 1, dd, mseed, tr.formula_lambda, tr.ext1_R,
                              tr.hom_IX_A, tr.ext1_A, tr.verdict))
    return rows, skipped


def format_survey(rows: Sequence[SurveyRow], skipped: int) -> str:
    head = f"{'#':>3}  {'degree data':<34} {'lam+K':>6} {'ext1_R':>6} {'homIXA':>6} {'ext1_A':>6}  verdict"
    lines = [head, "-" * len(head)]
    for r in rows:
        mark = "" if r.agrees else "  <- formula mismatch"
        lines.append(f"{r.index:>3}  {str(r.dd):<34} {r.formula:>6} {r.ext1_R:>6} {r.hom_IX_A:>6} "
                     f"{r.ext1_A:>6}  {r.verdict}{mark}")
    eligible = [r for r in rows if r.eligible]
    agree = sum(r.agrees for r in eligible)
    lines.append(f"formula agreement (ext1_R = lambda_c + sum K): {agree}/{len(eligible)} eligible; "
                 f"{len(rows) - len(eligible)} refused; {skipped} skipped over the cost cap")
    return "\n".join(lines)


# -- reproduction -------------------------------------------------------------------------


def twisted_cubic() -> HomogeneousMatrix:
    dd = DegreeData(3, [0, 0], [1, 1, 1])
    x = [Polynomial.variable(i, 4) for i in range(4)]
    return HomogeneousMatrix(dd, [[x[0], x[1], x[2]], [x[1], x[2], x[3]]])


def reproduce_instance(example: str) -> tuple[HomogeneousMatrix, dict]:
    if example == "5.10":
        A = random_matrix(DegreeData(4, [0, 0], [2, 2, 2, 2]), seed=1)
        expected = {"lambda_c": 101, "K": {"3": 0}, "dimW_formula": 101, "hilbert_polynomial": "32v - 64",
                    "degree": 32, "genus": 65, "ext1_R": 101, "hom_IX_A": 101, "ext1_A": 0,
                    "verdict": COMPONENT_CERTIFIED}
    elif example == "twisted-cubic":
        A = twisted_cubic()
        expected = {"lambda_c": 12, "dimW_formula": 12, "hilbert_polynomial": "3v + 1", "degree": 3,
                    "genus": 0, "ext1_R": 12, "hom_IX_A": 12, "ext1_A": 0, "verdict": COMPONENT_CERTIFIED}
    elif example == "exception-points":
        A = random_matrix(DegreeData(3, [0, 0], [1, 1, 1, 1]), seed=1)
        expected = {"exception_family": True, "dimW_formula": 13, "scheme_dim": 0, "degree": 4,
                    "verdict": GRADALG_CAVEAT}
    else:
        raise InputError(f"unknown example {example!r}; choose 5.10, twisted-cubic or exception-points")
    return A, expected


def reproduce(example: str) -> tuple[dict, bool]:
    A, expected = reproduce_instance(example)
    report = analyze_matrix(A)
    checks, ok = [], True
    for key, want in expected.items():
        got = report.get(key)
        passed = got == want
        ok &= passed
        checks.append({"key": key, "expected": want, "actual": got, "pass": passed})
    if example == "exception-points":
        passed = report["verdict"] != COMPONENT_CERTIFIED
        ok &= passed
        checks.append({"key": "not certified", "expected": True, "actual": passed, "pass": passed})
    report["example"] = example
    report["checks"] = checks
    report["reproduced"] = ok
    return report, ok


# -- argument handling -------------------------------------------------------------------


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _degree_data(args) -> DegreeData:
    if args.n is None or args.b is None or args.a is None:
        raise InputError("degree data needs --n, --b and --a")
    try:
        return DegreeData(args.n, args.b, args.a)
    except DegreeDataError as exc:
        raise InputError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="detdeform", description="Invariants and deformation "
                                "certificates for determinantal schemes.")
    sub = p.add_subparsers(dest="command", required=True)

    def degree_args(sp, required: bool):
        sp.add_argument("--n", type=int, required=required, help="ambient projective dimension")
        sp.add_argument("--b", type=_csv_ints, required=required, help="row degrees, ascending")
        sp.add_argument("--a", type=_csv_ints, required=required, help="column degrees, ascending")

    sp = sub.add_parser("invariants", help="closed-form invariants of degree data")
    degree_args(sp, True)

    sp = sub.add_parser("analyze", help="full pipeline on a matrix file or a random matrix")
    sp.add_argument("file", nargs="?", help="matrix file ('-' for stdin)")
    degree_args(sp, False)
    sp.add_argument("--random", type=int, metavar="SEED", help="draw a random matrix with this seed")
    sp.add_argument("--field", default="32003", help="prime p or Q (random matrices need a prime)")
    sp.add_argument("--minimal", action="store_true", help="force f_ij = 0 when a_j = b_i")
    sp.add_argument("--no-deletion", action="store_true", help="skip the column-deletion report")
    sp.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    sp.add_argument("--emit-matrix", action="store_true", help="print the matrix file instead of analyzing")

    sp = sub.add_parser("survey", help="random verification sweep")
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--t", type=_csv_ints, default=[2, 3], help="row counts to draw from")
    sp.add_argument("--c", type=_csv_ints, default=[2, 3], help="codimensions to draw from")
    sp.add_argument("--excess", type=_csv_ints, default=[1, 2], help="values of n - c to draw from")
    sp.add_argument("--max-degree", type=int, default=3, help="largest entry degree a_j - b_i")
    sp.add_argument("--max-cost", type=int, default=2500,
                    help="skip instances whose largest slice exceeds this dimension")
    sp.add_argument("--minimal", action="store_true")
    sp.add_argument("--json", action="store_true", help="rows as JSON instead of a table")

    sp = sub.add_parser("reproduce", help="rerun a built-in example and check its values")
    sp.add_argument("example", help="5.10, twisted-cubic or exception-points")
    return p


def _run(args) -> int:
    if args.command == "invariants":
        emit(invariants_report(_degree_data(args)))
        return 0

    if args.command == "analyze":
        if args.file is not None:
            text = sys.stdin.read() if args.file == "-" else _read(args.file)
            A = parse_matrix_file(text).matrix
        elif args.random is not None:
            try:
                fld = Field.parse(args.field)
            except ValueError as exc:
                raise InputError(f"bad field {args.field!r}: {exc}") from None
            if not fld.is_prime:
                raise InputError("random matrices are drawn over prime fields only")
            A = random_matrix(_degree_data(args), fld, args.random, args.minimal)
        else:
            raise InputError("analyze needs a matrix file or --random SEED with --n/--b/--a")
        if args.emit_matrix:
            sys.stdout.write(format_matrix_file(A))
            return 0
        emit(analyze_matrix(A, timing=args.timing, deletion=not args.no_deletion))
        return 0

    if args.command == "survey":
        if args.count < 0:
            raise InputError("count must be nonnegative")
        rows, skipped = survey(args.count, args.seed, args.t, args.c, args.excess, args.max_degree,
                               args.max_cost, args.minimal)
        if args.json:
            emit({"seed": args.seed, "skipped": skipped, "rows": [
                {"degree_data": {"n": r.dd.n, "b": list(r.dd.b), "a": list(r.dd.a)}, "seed": r.seed,
                 "dimW_formula": r.formula, "ext1_R": r.ext1_R, "hom_IX_A": r.hom_IX_A,
                 "ext1_A": r.ext1_A, "verdict": r.verdict, "agrees": r.agrees} for r in rows]})
        else:
            print(format_survey(rows, skipped))
        return 0

    if args.command == "reproduce":
        report, ok = reproduce(args.example)
        emit(report)
        if not ok:
            bad = [c["key"] for c in report["checks"] if not c["pass"]]
            print(f"reproduction mismatch: {', '.join(bad)}", file=sys.stderr)
            return 1
        return 0
    raise AssertionError(args.command)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except InputError as exc:
        print(f"detdeform: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
