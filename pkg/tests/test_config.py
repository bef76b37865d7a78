# -*- coding: utf-8 -*-
import pandas as pd
import pytest

from config import CAP_ENV_VAR, GlobalConfig
from errors import CapExceededError, ConfigError
from report_export import export_excel, get_available_path


def test_singleton(default_config):
    assert GlobalConfig() is default_config
    default_config.set("max_level", 5)
    assert GlobalConfig().get("max_level") == 5


def test_default_level_cap(default_config):
    assert default_config.max_level() == 12
    default_config.check_level(12)
    with pytest.raises(CapExceededError) as info:
        default_config.check_level(13)
    assert (info.value.limit, info.value.requested) == (12, 13)


def test_environment_overrides_config(default_config, monkeypatch):
    monkeypatch.setenv(CAP_ENV_VAR, "3")
    assert default_config.max_level() == 3
    with pytest.raises(CapExceededError):
        default_config.check_level(4)


@pytest.mark.parametrize("raw", ["abc", "0", "-2"])
def test_bad_environment_value(default_config, monkeypatch, raw):
    monkeypatch.setenv(CAP_ENV_VAR, raw)
    with pytest.raises(ConfigError):
        default_config.max_level()


def test_level_must_be_positive(default_config):
    with pytest.raises(ValueError):
        default_config.check_level(0)


def test_json_roundtrip(default_config, tmp_path):
    path = tmp_path / "config" / "config.json"
    default_config.set("monodromy_cap", 99)
    default_config.save_to_json(str(path))
    default_config.reset()
    default_config.load_from_json(str(path))
    assert default_config.get("monodromy_cap") == 99
    assert default_config.get("nonbacktracking_cap") == 1024


def test_unreadable_config_falls_back_to_defaults(default_config, tmp_path):
    path = tmp_path / "config.json"
    path.write_text("{", encoding="utf-8")
    default_config.load_from_json(str(path))
    assert default_config.get("max_level") == 12


def test_available_path_does_not_overwrite(tmp_path):
    (tmp_path / "verify.xlsx").write_bytes(b"")
    (tmp_path / "verify_1.xlsx").write_bytes(b"")
    assert get_available_path(str(tmp_path), "verify.xlsx") == str(tmp_path / "verify_2.xlsx")


def test_export_excel_renames_existing_file(tmp_path):
    frame = pd.DataFrame([{"item": 1, "group": "zeta", "status": "pass", "detail": "ok"}])
    first = export_excel(frame, str(tmp_path / "r.xlsx"))
    second = export_excel(frame, str(tmp_path / "r.xlsx"))
    assert first == str(tmp_path / "r.xlsx")
    assert second == str(tmp_path / "r_1.xlsx")
