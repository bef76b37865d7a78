#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
參考數值管理模組 (golden_store.py)

用途：
    管理 golden/reference_values.json 中的參考數值：
    - 多項式以因式形式存放（"factored"），讀取時展開成 IntPolynomial
    - 矩陣以巢狀整數串列存放，讀取時轉成 numpy object 陣列
    - 置換以 1 起算的循環記號存放
    - 頂點順序 / 葉順序以 JSON 串列存放（tuple 頂點以串列表示）

    檔案損壞或缺少鍵時不會讓整批驗證中止：錯誤會在讀取對應項目時以
    GoldenValueError 丟出，由 reference_suite.py 記為該項目失敗。

在整個應用中的角色：
    - reference_suite.py 的每個驗證項目由這裡取得預期值
    - main.py verify-paper --golden 可指定其他檔案

關聯檔案：
    - golden/reference_values.json
    - polynomial.py：parse_factored
    - constants.py：內附檔案路徑
"""

import json
import logging
import os

import numpy as np

from constants import Constants
from errors import ZetaGraphError
from polynomial import parse_factored

logger = logging.getLogger(__name__)


class GoldenValueError(ZetaGraphError, KeyError):
    """參考數值缺少或格式錯誤。"""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


def _tupled(x):
    if isinstance(x, list):
        return tuple(_tupled(y) for y in x)
    return x


class GoldenStore:
    """
    參考數值存取器。

    屬性：
        path (str): 參考數值檔路徑
        data (dict): 原始 JSON 內容（載入失敗時為空字典）
        load_error (str | None): 載入失敗的原因
    """

    def __init__(self, path=None):
        """
        Args:
            path (str, optional): 參考數值檔；None 時使用內附檔案
        """
        self.path = path or Constants.golden_path()
        self.data = {}
        self.load_error = None
        self.load()

    def load(self):
        """從磁碟載入參考數值，失敗時記錄原因並保留空資料。"""
        if not os.path.exists(self.path):
            self.load_error = f"golden file not found: {self.path}"
            logger.error(self.load_error)
            return
        try:
            with open(self.path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except (json.JSONDecodeError, OSError) as e:
            self.load_error = f"golden file unreadable: {e}"
            logger.error(self.load_error)
            return
        if not isinstance(data, dict):
            self.load_error = "golden file must hold a JSON object"
            logger.error(self.load_error)
            return
        self.data = data
        logger.debug("loaded %d golden entries from %s", len(data), self.path)

    def entry(self, key):
        """
        取得一筆參考數值。

        Raises:
            GoldenValueError: 檔案載入失敗或缺少該鍵
        """
        if self.load_error:
            raise GoldenValueError(f"{key}: {self.load_error}")
        try:
            value = self.data[key]
        except KeyError:
            raise GoldenValueError(f"golden value {key!r} is missing") from None
        if not isinstance(value, dict):
            raise GoldenValueError(f"golden value {key!r} must be an object")
        return value

    def field(self, key, name):
        value = self.entry(key)
        if name not in value:
            raise GoldenValueError(f"golden value {key!r} has no field {name!r}")
        return value[name]

    def polynomial(self, key):
        """因式形式展開後的 IntPolynomial。"""
        text = self.field(key, "factored")
        try:
            return parse_factored(text)
        except ValueError as e:
            raise GoldenValueError(f"golden value {key!r}: {e}") from None

    def matrix(self, key, name="matrix"):
        """numpy object 整數矩陣。"""
        rows = self.field(key, name)
        try:
            M = np.array([[int(x) for x in row] for row in rows], dtype=object)
        except (TypeError, ValueError) as e:
            raise GoldenValueError(f"golden value {key!r}.{name}: {e}") from None
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise GoldenValueError(f"golden value {key!r}.{name} is not a square matrix")
        return M

    def order(self, key, name="order"):
        """頂點或葉的順序（JSON 串列轉回 tuple 頂點）。"""
        return [_tupled(x) for x in self.field(key, name)]

    def text(self, key, name):
        value = self.field(key, name)
        if not isinstance(value, str):
            raise GoldenValueError(f"golden value {key!r}.{name} must be a string")
        return value
