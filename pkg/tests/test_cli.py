import json
from pathlib import Path

import pytest

from hermicode.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(tmp_path, *argv):
    out = tmp_path / "report.out"
    code = main([*argv, "--output", str(out)])
    return code, out.read_text(encoding="utf-8") if out.exists() else None


def test_code_c_matches_golden(tmp_path):
    code, text = run(tmp_path, "code", "c", "--p", "3", "--a", "1", "--b", "1", "--N", "1")
    assert code == 0
    assert text == (GOLDEN / "code_c_p3_a1_b1_N1.json").read_text(encoding="utf-8")
    report = json.loads(text)
    assert report["code"]["weight_distribution"] == {"0": 1, "5": 4, "8": 2, "9": 2}


def test_code_gamma_report(tmp_path):
    code, text = run(tmp_path, "code", "gamma", "--p", "3")
    assert code == 0
    c = json.loads(text)["code"]
    assert [c["n"], c["k"], c["d_min"], c["w_max"]] == [9, 3, 5, 8]
    assert c["disparity"] == [8, 5]


def test_code_csv(tmp_path):
    code, text = run(tmp_path, "code", "c", "--p", "3", "--format", "csv")
    assert code == 0
    assert text.splitlines() == ["weight,count", "0,1", "5,4", "8,2", "9,2"]


def test_compare_identities(tmp_path):
    code, text = run(tmp_path, "code", "compare", "--p", "3", "--N", "2")
    assert code == 0
    report = json.loads(text)
    assert all(v["match"] for v in report["identities"].values())
    assert report["Gamma_vs_RM"]["d_diff"] == 27 - 9


def test_reports_are_byte_identical(tmp_path):
    a = run(tmp_path, "verify", "--p", "3", "--variants", "2")[1]
    b = run(tmp_path, "verify", "--p", "3", "--variants", "2", "--threads", "3")[1]
    assert a == b


def test_verify_exit_zero(tmp_path):
    code, text = run(tmp_path, "verify", "--p", "3", "--a", "1", "--b", "1", "--N", "1")
    report = json.loads(text)
    assert code == 0
    assert report["total_mismatches"] == 0
    assert {c["name"] for c in report["checks"]} >= {"exponential_sum", "trace_affine_count", "trace_level_count"}


def test_verify_t9(tmp_path):
    code, text = run(tmp_path, "verify", "--p", "3", "--a", "1", "--b", "2", "--N", "1", "--variants", "3")
    assert code == 0 and json.loads(text)["ok"]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--p", "2"],
        ["verify", "--p", "4"],
        ["code", "gamma", "--p", "3", "--N", "0"],
        ["code", "nonsense", "--p", "3"],
        ["sum", "--p", "3", "--v", "1,2,3"],
        ["sum", "--p", "3", "--rho", "5"],
        ["sum", "--p", "3", "--hermitian", "[[3]]"],
        ["field-info", "--p", "3", "--format", "csv"],
        ["verify"],
    ],
)
def test_config_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_budget_exit_3(tmp_path, monkeypatch):
    assert main(["code", "gamma", "--p", "3", "--N", "2", "--budget", "100"]) == 3
    monkeypatch.setenv("HERMICODE_BUDGET", "100")
    assert main(["code", "c", "--p", "3", "--N", "2"]) == 3


def test_sum_query(tmp_path):
    code, text = run(tmp_path, "sum", "--p", "3", "--v", "0,0")
    report = json.loads(text)
    assert code == 0 and report["match"]
    assert report["integer_value"] == -3  # (-1)^1 * 3^(2-1)


def test_sum_custom_form_zero_branch(tmp_path):
    code, text = run(tmp_path, "sum", "--p", "3", "--N", "2", "--hermitian", "[[1,0],[0,0]]", "--v", "0,0,1,0")
    report = json.loads(text)
    assert code == 0 and report["integer_value"] == 0


def test_field_info_and_text(tmp_path):
    code, text = run(tmp_path, "field-info", "--p", "3", "--format", "text")
    assert code == 0
    assert "modulus: [1, 0, 1]" in text
    assert "alpha: 3" in text


def test_stdout(capsys):
    assert main(["field-info", "--p", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["t"] == 3
