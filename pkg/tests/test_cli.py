"""End-to-end tests for the command-line interface (in-process)."""

import json
from fractions import Fraction

import pytest

from ldp import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_parse_ok_exit_code(capsys):
    code, out, _ = run(capsys, "parse", "[2,4]")
    assert code == 0
    data = json.loads(out)
    assert data["notation"] == "[2,4]"


def test_parse_syntax_error_exit_code(capsys):
    code, _, err = run(capsys, "parse", "[2")
    assert code == 2
    assert "error" in err


def test_parse_semantic_error_exit_code(capsys):
    # a star fork needs exactly three branches
    code, _, err = run(capsys, "parse", "[2;[2],[3]]")
    assert code == 2
    assert "error" in err


def test_det_values(capsys):
    data = run_json(capsys, "det", "[2,2,2,2]+[2,4]")
    dets = {c["notation"]: c["determinant"] for c in data["components"]}
    assert dets == {"[2^4]": 5, "[2,4]": 7}
    assert data["determinant"] == 35


def test_report_contents(capsys):
    data = run_json(capsys, "report", "2[2^4]+[2,4]")
    assert data["index"] == 7
    assert Fraction(data["k_sq"]) == Fraction(1, 7)
    assert data["klt"] is True
    assert data["bogomolov"] == "NotExcluded"
    hunt = data["hunt"]
    assert hunt["component"] == "[2,4]"
    assert Fraction(hunt["coefficient"]) == Fraction(4, 7)


def test_report_du_val_has_no_hunt_divisor(capsys):
    data = run_json(capsys, "report", "2[2^4]")
    assert data["hunt"] is None


def test_hunt_star_example(capsys):
    data = run_json(capsys, "hunt", "[2;[2],[3],[5]]")
    assert Fraction(data["coefficient"]) == Fraction(28, 29)


def test_lct_reports_exactness(capsys):
    data = run_json(capsys, "lct", "[3]", "--incidence", "1")
    assert Fraction(data["lct_upper_bound"]) == 2
    assert data["exact_on_minimal_resolution"] is True


def test_lemma42_sweep_agrees_with_solver(capsys):
    data = run_json(capsys, "lemma42", "[2,4]", "--max-a", "3")
    assert data["rows"]
    assert data["closed_form_matches_solver"] is True
    cases = {r.get("case") for r in data["rows"]}
    assert "1a" in cases


def test_table1_count(capsys):
    data = run_json(capsys, "table1", "--n", "0..4", "--m", "1..4")
    assert data["count"] == 88
    types = {inst["type"] for inst in data["instances"]}
    assert "2[2^4]+[3]" in types
    assert "2[2^4]+[2,4]" in types


def test_pencil_char_five(capsys):
    data = run_json(capsys, "pencil", "--char", "5")
    assert data["quadratic_factor_has_double_root"] is True
    kinds = {tuple(m["parameter"]): m["kind"] for m in data["members"]}
    assert kinds == {(1, 2): "Cusp"}


def test_pencil_bad_characteristic(capsys):
    code, _, err = run(capsys, "pencil", "--char", "3")
    assert code == 2
    assert "error" in err


def test_crossratio_cores(capsys):
    data = run_json(capsys, "crossratio")
    assert len(data["quadratics"]) == 3
    assert data["discriminant_cores"] == [5, 5, 5]


def test_weighted_model_checks(capsys):
    data = run_json(capsys, "weighted-model")
    for i in (2, 3):
        member = data[f"member_{i}"]
        assert member["degree_ok"] is True
        assert member["cusp_support_ok"] is True
        assert member["smooth"] is True
