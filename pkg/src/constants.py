# -*- coding: utf-8 -*-
"""
constants.py - 常數定義模組

用途：
    集中定義生成元名稱、C₄ 的頂點與埠、以及重現參考數值所用的頂點順序
    與葉（sheet）順序預設值，並提供參考數值檔的路徑。

在整個應用中的角色：
    作為常數的唯一來源，供 basilica.py、products.py、covering.py、main.py、
    reference_suite.py 引用，確保埠字母表與各種順序的一致性。

關聯檔案：
    - src/basilica.py：生成元字母表
    - src/products.py：C₄ 的頂點與埠
    - src/covering.py / src/main.py：葉順序與頂點順序預設值
    - golden/reference_values.json：參考數值（以因式形式存放）

名詞說明：
    - 葉（sheet）：覆蓋圖中對應到底圖一份拷貝的頂點集合，以 Γ_n 的字詞為鍵
    - 頂點順序：產生矩陣時各頂點對應的列索引
"""

import os


class Constants:
    """
    常數類別。

    所有屬性皆為類別層級變數或靜態方法，無需實例化即可使用。
    """

    GENERATOR_NAMES = ("a", "a^-1", "b", "b^-1")    # Γ_n 每個頂點的埠順序
    C4_VERTICES = ("a", "b^-1", "b", "a^-1")        # C₄ 頂點沿環的順序
    C4_PORTS = ("A", "B")                          # C₄ 的埠

    # 頂點順序：Γ₂ 的四個字詞
    GAMMA2_ORDER = ("11", "01", "00", "10")
    # 頂點順序：Γ₁ⓩC₄ 的八個頂點 (字詞, C₄ 頂點)
    ZIGZAG1_ORDER = (
        ("0", "a^-1"), ("1", "a"), ("1", "a^-1"), ("0", "a"),
        ("0", "b^-1"), ("1", "b"), ("1", "b^-1"), ("0", "b"),
    )
    # 葉順序：X³ 的八個字詞（Γ₃ⓖΓ₂ 的葉）
    THREE_LETTER_SHEETS = ("110", "010", "000", "100", "101", "001", "011", "111")
    # 葉順序：X² 的四個字詞（Γ₃ⓩC₄ 覆蓋 Γ₁ⓩC₄ 的葉）
    TWO_LETTER_SHEETS = ("10", "00", "01", "11")
    # 兩葉覆蓋的群標記：以 0 結尾的葉為單位元
    TWO_SHEET_GROUP = {"0": "id", "1": "sigma"}

    # 依葉字長選用的預設葉順序
    SHEET_ORDER_PRESETS = {
        1: ("0", "1"),
        2: TWO_LETTER_SHEETS,
        3: THREE_LETTER_SHEETS,
    }

    @staticmethod
    def vertex_order_preset(spec_text):
        """
        取得圖規格字串對應的預設頂點順序。

        Args:
            spec_text (str): 圖規格字串，例如 "gamma:2"、"zigzag:1"

        Returns:
            tuple | None: 預設頂點順序；沒有預設值時回傳 None
        """
        return {
            "gamma:2": Constants.GAMMA2_ORDER,
            "zigzag:1": Constants.ZIGZAG1_ORDER,
        }.get(spec_text)

    @staticmethod
    def golden_path():
        """
        取得內附參考數值檔的絕對路徑。

        回傳值：
            str: 例如 "<repo>/golden/reference_values.json"
        """
        root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
        return os.path.join(root, "golden", "reference_values.json")
