#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
例外類別定義模組 (errors.py)

用途：
    集中定義整個套件使用的例外型別。每個例外同時繼承內建例外
    （ValueError / ArithmeticError），呼叫端可以用一般的 except ValueError 捕捉，
    也可以用 ZetaGraphError 一次捕捉所有領域錯誤。

在整個應用中的角色：
    - 函式庫模組只丟出這裡定義的例外，不直接 print 或結束程式
    - main.py 依例外型別對應到命令列的結束碼（2 / 3 / 4）

關聯檔案：
    - basilica.py：InvalidWordError
    - multigraph.py / products.py：GraphError
    - covering.py：CoverError
    - polynomial.py / zeta.py：NotDivisibleError
    - config.py：CapExceededError、ConfigError
    - main.py：例外 → 結束碼對應
"""


class ZetaGraphError(Exception):
    """所有領域例外的共同基底。"""


class InvalidWordError(ZetaGraphError, ValueError):
    """字詞為空，或含有 0/1 以外的字母。"""


class GraphError(ZetaGraphError, ValueError):
    """旋轉映射不合法、頂點/埠不存在、頂點順序不完整，或圖不滿足計算前提。"""


class CoverError(ZetaGraphError, ValueError):
    """覆蓋資料不合法：投影非滿射、纖維大小不一致、提升不是完美配對等。"""


class ConfigError(ZetaGraphError, ValueError):
    """配置值（含環境變數 ZETAGRAPH_CAP）無法解析。"""


class CapExceededError(ZetaGraphError):
    """
    要求的大小超過配置上限。

    Args:
        message (str): 錯誤訊息
        limit (int): 目前生效的上限
        requested (int): 呼叫端要求的大小
        lower_bound (int, optional): 計算中斷時已知的下界（例如群階）
    """

    def __init__(self, message, limit=None, requested=None, lower_bound=None):
        super().__init__(message)
        self.limit = limit
        self.requested = requested
        self.lower_bound = lower_bound


class NotDivisibleError(ZetaGraphError, ArithmeticError):
    """
    整係數多項式無法整除。

    Args:
        message (str): 錯誤訊息
        quotient: 部分商（IntPolynomial，可能為 None）
        remainder: 非零餘式（IntPolynomial）
    """

    def __init__(self, message, quotient=None, remainder=None):
        super().__init__(message)
        self.quotient = quotient
        self.remainder = remainder
