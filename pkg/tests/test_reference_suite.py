# -*- coding: utf-8 -*-
import json

import pytest

from reference_suite import COLUMNS, GROUPS, all_passed, run_suite, select_items


@pytest.fixture(scope="module")
def full_run():
    return run_suite()


def test_every_item_passes(full_run):
    assert list(full_run.columns) == COLUMNS
    assert list(full_run["item"]) == list(range(1, 17))
    failed = full_run[full_run["status"] != "pass"]
    assert failed.empty, failed.to_string()
    assert all_passed(full_run)


def test_groups_are_known(full_run):
    assert set(full_run["group"]) == set(GROUPS)


def test_zigzag_criteria_disagreement_is_reported(full_run):
    detail = full_run.loc[full_run["item"] == 14, "detail"].item()
    assert detail.startswith("verdicts agree")
    assert "FLAGGED" in detail
    assert "3/1" in detail


def test_select_by_group_and_number():
    assert [it.number for it in select_items("basilica")] == [15]
    assert [it.number for it in select_items("16, 2")] == [2, 16]
    assert {it.group for it in select_items("zeta")} == {"zeta"}
    assert len(select_items(None)) == 16


@pytest.mark.parametrize("only", ["nope", "99", "zeta,x"])
def test_select_rejects_unknown(only):
    with pytest.raises(ValueError):
        select_items(only)


def test_missing_golden_file_fails_golden_items(tmp_path):
    frame = run_suite(only="1,15", golden_path=str(tmp_path / "missing.json"))
    status = dict(zip(frame["item"], frame["status"]))
    assert status == {1: "fail", 15: "pass"}
    assert "not found" in frame.loc[frame["item"] == 1, "detail"].item()
    assert not all_passed(frame)


def test_wrong_golden_value_fails_only_that_item(tmp_path):
    doc = {"zeta_gamma2": {"factored": "(1-t)^3"}}
    path = tmp_path / "golden.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    frame = run_suite(only="1,2", golden_path=str(path))
    status = dict(zip(frame["item"], frame["status"]))
    assert status == {1: "fail", 2: "fail"}
    assert "got" in frame.loc[frame["item"] == 1, "detail"].item()
    assert "missing" in frame.loc[frame["item"] == 2, "detail"].item()


def test_empty_frame_is_not_a_pass():
    import pandas as pd
    assert not all_passed(pd.DataFrame(columns=COLUMNS))
