# -*- coding: utf-8 -*-
"""共用的圖、覆蓋與配置 fixture。"""

import pytest

from basilica import build_schreier
from config import CAP_ENV_VAR, GlobalConfig
from covering import product_cover, schreier_cover, zigzag_cover
from constants import Constants
from golden_store import GoldenStore
from products import schreier_zigzag


@pytest.fixture(autouse=True)
def default_config(monkeypatch):
    """每個測試都從預設配置開始，且不受外部 ZETAGRAPH_CAP 影響。"""
    monkeypatch.delenv(CAP_ENV_VAR, raising=False)
    config = GlobalConfig()
    config.reset()
    yield config
    config.reset()


@pytest.fixture(scope="session")
def golden():
    return GoldenStore()


@pytest.fixture(scope="session")
def gamma1():
    return build_schreier(1)


@pytest.fixture(scope="session")
def gamma2():
    return build_schreier(2)


@pytest.fixture(scope="session")
def gamma3():
    return build_schreier(3)


@pytest.fixture(scope="session")
def zigzag1():
    return schreier_zigzag(1)


@pytest.fixture(scope="session")
def cover_3_2():
    """Γ₃ | Γ₂，兩葉。"""
    return schreier_cover(3, 2)


@pytest.fixture(scope="session")
def product_cover_3_2():
    """Γ₃ ⓖ Γ₂ | Γ₂，葉依預設八葉順序。"""
    return product_cover(3, 2).with_sheet_order(Constants.THREE_LETTER_SHEETS)


@pytest.fixture(scope="session")
def zigzag_cover_2_1():
    return zigzag_cover(2, 1)


@pytest.fixture(scope="session")
def zigzag_cover_3_1():
    return zigzag_cover(3, 1).with_sheet_order(Constants.TWO_LETTER_SHEETS)
