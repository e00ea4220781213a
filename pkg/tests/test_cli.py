import json

import pytest

from detdeform.cli import (
    InputError, analyze_matrix, format_matrix_file, main, parse_matrix_file, survey, format_survey,
    twisted_cubic,
)
from detdeform.detmodel import DegreeData, random_matrix

STABLE_KEYS = {"lambda_c", "K", "dimW_formula", "nonempty", "exception_family", "ext1_R", "hom_IX_A",
               "ext1_A", "tangent_excess", "degree", "genus", "scheme_dim", "verdict", "seed", "field"}

CUBIC_FILE = """\
# the twisted cubic
n 3
b 0,0
a 1,1,1
entry 1 0 x0
entry 1 1 x1
entry 1 2 x2
entry 2 0 x1
entry 2 1 x2
entry 2 2 x3
"""


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariants_command(capsys):
    code, out, _ = run(capsys, "invariants", "--n", "4", "--b", "0,0", "--a", "2,2,2,2")
    rep = json.loads(out)
    assert code == 0
    assert (rep["lambda_c"], rep["K"], rep["dimW_formula"]) == (101, {"3": 0}, 101)


def test_invariants_flags(capsys):
    rep = json.loads(run(capsys, "invariants", "--n", "3", "--b", "0,0", "--a", "0,0,5")[1])
    assert rep["nonempty"] is False
    rep = json.loads(run(capsys, "invariants", "--n", "3", "--b", "0,0", "--a", "1,1,1,1")[1])
    assert rep["exception_family"] is True


def test_bad_degree_data_exits_2(capsys):
    code, _, err = run(capsys, "invariants", "--n", "1", "--b", "0,0", "--a", "1,1,1")
    assert code == 2 and "n >= c" in err


def test_parse_cubic_file(cubic):
    assert parse_matrix_file(CUBIC_FILE).matrix == cubic


@pytest.mark.parametrize("text,needle", [
    ("n 3\nb 0,0\na 1,1,1\nentry 1 0 x0 + x1^2\n", "line 4"),
    ("n 3\nb 0,0\na 1,1,1\nentry 3 0 x0\n", "outside"),
    ("n 3\nb 0,0\na 1,1,1\nentry 1 0 x0 $\n", "line 4"),
    ("n 3\nb 0,0\nbogus 1\n", "line 3: unknown keyword"),
    ("n 3\nb 0,0\n", "missing 'a'"),
    ("n 3\nb 0,0\na 1,1,1\nentry 1 0 x0\nentry 1 0 x1\n", "given twice"),
    ("n 3\nb 0,0\na 0,1,1\nminimal\nentry 1 0 5\n", "minimal"),
    ("n 3\nfield 10\nb 0,0\na 1,1,1\n", "line 2"),
])
def test_parse_errors(text, needle):
    with pytest.raises(InputError, match=needle):
        parse_matrix_file(text)


def test_matrix_file_roundtrip():
    A = random_matrix(DegreeData(3, [0, 1], [1, 1, 2]), seed=7)
    back = parse_matrix_file(format_matrix_file(A))
    assert back.matrix == A and back.seed == 7


def test_analyze_cubic_file(tmp_path, capsys):
    path = tmp_path / "cubic.txt"
    path.write_text(CUBIC_FILE)
    code, out, _ = run(capsys, "analyze", str(path))
    rep = json.loads(out)
    assert code == 0 and STABLE_KEYS <= rep.keys()
    assert (rep["degree"], rep["genus"], rep["verdict"], rep["hom_IX_A"]) == (3, 0, "COMPONENT_CERTIFIED", 12)
    assert rep["exact_en"] and rep["exact_br"] and rep["tau_commutes"]


def test_analyze_bad_file_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("n 3\nb 0,0\na 1,1,1\nentry 1 0 x0 + x1^2\n")
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 2 and "line 4" in err
    assert run(capsys, "analyze", str(tmp_path / "missing.txt"))[0] == 2
    assert run(capsys, "analyze")[0] == 2


def test_duplicated_column_banner(quadric_curve):
    rows = [list(r) for r in quadric_curve.entries]
    for r in rows:
        r[1] = r[0]
    from detdeform.detmodel import HomogeneousMatrix
    rep = analyze_matrix(HomogeneousMatrix(quadric_curve.dd, rows), deletion=False)
    assert rep["verdict"] == "NOT_STANDARD_DETERMINANTAL"
    assert rep["banner"].startswith("NOT_STANDARD_DETERMINANTAL")
    assert rep["exact_en"] is False


def test_analyze_is_deterministic(capsys):
    argv = ("analyze", "--n", "3", "--b", "0,0", "--a", "1,1,2", "--random", "4")
    first = run(capsys, *argv)[1]
    assert first == run(capsys, *argv)[1]
    assert json.loads(first)["seed"] == 4


def test_emit_matrix(capsys):
    out = run(capsys, "analyze", "--n", "3", "--b", "0,0", "--a", "1,1,1", "--random", "2", "--emit-matrix")[1]
    assert parse_matrix_file(out).matrix == random_matrix(DegreeData(3, [0, 0], [1, 1, 1]), seed=2)


def test_random_needs_prime(capsys):
    code, _, err = run(capsys, "analyze", "--n", "3", "--b", "0,0", "--a", "1,1,1", "--random", "1",
                       "--field", "Q")
    assert code == 2 and "prime" in err


def test_survey_empty_and_deterministic(capsys):
    code, out, _ = run(capsys, "survey", "--count", "0")
    assert code == 0 and "0/0 eligible" in out
    argv = ("survey", "--count", "3", "--seed", "5", "--c", "2", "--max-degree", "2")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_survey_rows_agree():
    rows, _ = survey(4, seed=11, cs=(2, 3), max_degree=2, max_cost=1200)
    assert len(rows) == 4
    assert all(r.agrees for r in rows if r.eligible)
    assert format_survey(rows, 0).splitlines()[-1].startswith("formula agreement")


def test_reproduce_cubic_and_unknown(capsys):
    code, out, _ = run(capsys, "reproduce", "twisted-cubic")
    rep = json.loads(out)
    assert code == 0 and rep["reproduced"] and all(c["pass"] for c in rep["checks"])
    assert run(capsys, "reproduce", "nope")[0] == 2


def test_reproduce_exception_points(capsys):
    code, out, _ = run(capsys, "reproduce", "exception-points")
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "GRADALG_CAVEAT" and rep["dimW_formula"] == 13


def test_reproduce_mismatch_exits_1(monkeypatch, capsys):
    import detdeform.cli as cli
    monkeypatch.setattr(cli, "reproduce_instance", lambda ex: (twisted_cubic(), {"degree": 4}))
    code, _, err = run(capsys, "reproduce", "twisted-cubic")
    assert code == 1 and "degree" in err
