# -*- coding: utf-8 -*-
import json

import openpyxl
import pytest

from config import CAP_ENV_VAR
from constants import Constants
from main import EXIT_CAP, EXIT_CHECK, EXIT_OK, EXIT_USAGE, main


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_help_exits_cleanly(capsys):
    code, out, _ = _run(capsys, "--help")
    assert code == EXIT_OK
    assert "verify-paper" in out


def test_schreier_json(capsys):
    code, out, _ = _run(capsys, "schreier", "--level", "2")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["vertices"] == ["00", "01", "10", "11"]
    assert len(doc["rot"]) == 8


def test_schreier_dot_to_file(capsys, tmp_path):
    target = tmp_path / "g1.dot"
    code, out, _ = _run(capsys, "schreier", "--level", "1", "--format", "dot", "--output", str(target))
    assert code == EXIT_OK
    assert out == ""
    assert target.read_text(encoding="utf-8").rstrip().endswith("}")


def test_output_is_deterministic(capsys):
    _, first, _ = _run(capsys, "schreier", "--level", "3")
    _, second, _ = _run(capsys, "schreier", "--level", "3")
    assert first == second


@pytest.mark.parametrize("argv", [
    ("schreier", "--level", "0"),
    ("schreier",),
    ("product", "--kind", "grp", "--n", "2"),
    ("zeta",),
    ("zeta", "--graph", "gamma:2", "--check-factorization"),
    ("zeta", "--graph", "torus:1"),
])
def test_usage_errors(capsys, argv):
    code, _, _ = _run(capsys, *argv)
    assert code == EXIT_USAGE


def test_level_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv(CAP_ENV_VAR, "2")
    code, out, _ = _run(capsys, "schreier", "--level", "3")
    assert code == EXIT_CAP
    assert out == ""


def test_grp_product_certificate(capsys, tmp_path):
    target = tmp_path / "grp.json"
    code, _, _ = _run(capsys, "product", "--kind", "grp", "--n", "2", "--r", "1", "--output", str(target))
    assert code == EXIT_OK
    cert = json.loads((tmp_path / "grp.json.cert.json").read_text(encoding="utf-8"))
    assert cert["isomorphic"] is True
    assert cert["isomorphic_to"] == "Gamma_3"
    assert len(cert["pairs"]) == 8
    assert len(json.loads(target.read_text(encoding="utf-8"))["vertices"]) == 8


def test_zigzag_product_certificate(capsys, tmp_path):
    target = tmp_path / "zz.json"
    code, _, _ = _run(capsys, "product", "--kind", "zigzag", "--n", "2", "--output", str(target))
    assert code == EXIT_OK
    cert = json.loads((tmp_path / "zz.json.cert.json").read_text(encoding="utf-8"))
    assert cert["valid"] is True
    assert cert["vertices"] == "16"
    assert cert["degrees"] == ["4"]


def test_zeta_graph(capsys, golden):
    code, out, _ = _run(capsys, "zeta", "--graph", "gamma:2")
    assert code == EXIT_OK
    section = json.loads(out)["graph"]
    assert section["vertex_order"] == list(Constants.GAMMA2_ORDER)
    assert section["ihara_reciprocal"] == golden.polynomial("zeta_gamma2").to_json()
    assert section["oracle_agrees"] is True
    assert section["adjacency"][0] == ["2", "2", "0", "0"]


def test_zeta_lex_order(capsys):
    code, out, _ = _run(capsys, "zeta", "--graph", "gamma:2", "--order", "lex")
    assert code == EXIT_OK
    assert json.loads(out)["graph"]["vertex_order"] == ["00", "01", "10", "11"]


def test_zeta_artin(capsys, golden):
    code, out, _ = _run(
        capsys, "zeta", "--artin", "gamma:3/gamma:2", "--check-factorization", "--check-divisibility",
    )
    assert code == EXIT_OK
    section = json.loads(out)["artin"]
    assert section["factorization"] is True
    assert section["divisibility"]["divisible"] is True
    assert section["divisibility"]["remainder"] == []
    assert section["l_reciprocals"]["sign"] == golden.polynomial("l_sign_gamma3_over_gamma2").to_json()
    assert section["artin_matrices"]["sigma"][2] == ["0", "0", "0", "1"]


def test_zeta_artin_on_non_normal_cover(capsys):
    code, _, _ = _run(capsys, "zeta", "--artin", "gamma:4/gamma:2")
    assert code == EXIT_CHECK


def test_cover_summary(capsys):
    code, out, _ = _run(capsys, "cover", "--cover", "gamma:3/gamma:2")
    assert code == EXIT_OK
    assert out.splitlines() == [
        "cover: Gamma_3 | Gamma_2",
        "covering: true",
        "sheets: 0 1",
        "frobenius e_a: (1)",
        "frobenius e_b: (1 2)",
        "monodromy order: 2",
        "normal: true",
    ]


def test_cover_with_preset_sheet_order(capsys, golden):
    code, out, _ = _run(capsys, "cover", "--cover", "gamma:5", "--base", "gamma:2")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[2] == "sheets: " + " ".join(Constants.THREE_LETTER_SHEETS)
    assert f"frobenius e_a: {golden.text('frobenius_gamma5_over_gamma2', 'e_a')}" in lines
    assert f"frobenius e_b: {golden.text('frobenius_gamma5_over_gamma2', 'e_b')}" in lines
    assert lines[-1] == "normal: false"


def test_cover_with_explicit_sheet_order(capsys):
    code, out, _ = _run(capsys, "cover", "--cover", "gamma:3/gamma:2", "--sheet-order", "1,0")
    assert code == EXIT_OK
    assert "sheets: 1 0" in out.splitlines()


def test_cover_report_zigzag(capsys):
    code, out, _ = _run(capsys, "cover", "--cover", "zigzag:3/zigzag:1", "--report")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["covering"] is True
    assert [s["key"] for s in report["sheets"]] == list(Constants.TWO_LETTER_SHEETS)
    assert set(report["frobenius"].values()) == {"(1 2)(3 4)"}
    assert report["normal"] is False
    assert report["regular_by_tree_lift"] is True
    connected = {row["sheet"]: row["connected"] for row in report["sheet_connectivity"]}
    assert connected == {"10": True, "00": False, "01": False, "11": True}


def test_cover_rejects_unknown_pair(capsys):
    code, out, _ = _run(capsys, "cover", "--cover", "cycle:3/gamma:1")
    assert code == EXIT_CHECK
    assert out == ""


def test_verify_paper_single_item(capsys):
    code, out, _ = _run(capsys, "verify-paper", "--only", "1")
    assert code == EXIT_OK
    assert "pass" in out
    assert "fail" not in out


def test_verify_paper_with_corrupted_golden(capsys, tmp_path):
    broken = tmp_path / "golden.json"
    broken.write_text("{", encoding="utf-8")
    code, out, _ = _run(capsys, "verify-paper", "--only", "1,15", "--golden", str(broken))
    assert code == EXIT_CHECK
    assert "fail" in out


def test_verify_paper_unknown_selection(capsys):
    code, _, err = _run(capsys, "verify-paper", "--only", "nope")
    assert code == EXIT_USAGE
    assert "unknown suite selection" in err


def test_verify_paper_xlsx(capsys, tmp_path):
    target = tmp_path / "out" / "verify.xlsx"
    code, _, err = _run(capsys, "verify-paper", "--only", "basilica", "--xlsx", str(target))
    assert code == EXIT_OK
    assert f"exported {target}" in err
    ws = openpyxl.load_workbook(target).active
    assert [c.value for c in ws[1]] == ["item", "group", "status", "detail"]
    assert ws.cell(row=2, column=1).value == 15
    assert ws.cell(row=2, column=3).value == "pass"
