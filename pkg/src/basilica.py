#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Basilica 群作用模組 (basilica.py)

用途：
    以兩狀態自動機實作 Basilica 群在二元字詞上的作用：
        a(0w) = 0 b(w)    a(1w) = 1 w
        b(0w) = 1 a(w)    b(1w) = 0 w
    以及由上式反推的逆元規則，並建構有限 Schreier 圖 Γ_n。
    字詞以字串表示，最左字母最先被讀取。

在整個應用中的角色：
    - 為 products.py（兩種圖乘積）與 covering.py（葉的計算）提供群作用
    - build_schreier() 是 Γ_n 的唯一建構入口

關聯檔案：
    - multigraph.py：RotationGraph 旋轉映射表示
    - config.py：層級上限 check_level()
    - constants.py：埠（生成元）順序
"""

import itertools
import logging
from collections import deque
from enum import Enum

from sympy.combinatorics import Permutation

from config import GlobalConfig
from constants import Constants
from errors import InvalidWordError
from multigraph import RotationGraph

logger = logging.getLogger(__name__)


class Generator(str, Enum):
    """生成元 {a, a⁻¹, b, b⁻¹}。值即為圖中使用的埠名稱。"""

    A = "a"
    A_INV = "a^-1"
    B = "b"
    B_INV = "b^-1"

    @classmethod
    def _missing_(cls, value):
        aliases = {"a⁻¹": "a^-1", "a-1": "a^-1", "b⁻¹": "b^-1", "b-1": "b^-1"}
        if isinstance(value, str) and value in aliases:
            return cls(aliases[value])
        return None

    @property
    def inverse(self):
        return _INVERSES[self]

    def __str__(self):
        return self.value


_INVERSES = {
    Generator.A: Generator.A_INV,
    Generator.A_INV: Generator.A,
    Generator.B: Generator.B_INV,
    Generator.B_INV: Generator.B,
}

# (狀態, 讀入字母) -> (下一狀態, 輸出字母)；下一狀態 None 代表之後原樣複製
_TRANSITIONS = {
    ("a", "0"): ("b", "0"),
    ("a", "1"): (None, "1"),
    ("b", "0"): ("a", "1"),
    ("b", "1"): (None, "0"),
    ("a^-1", "0"): ("b^-1", "0"),
    ("a^-1", "1"): (None, "1"),
    ("b^-1", "1"): ("a^-1", "0"),
    ("b^-1", "0"): (None, "1"),
}


class SuffixVerdict(Enum):
    """suffix_distinct_check 的結果。DISTINCT 與 VACUOUS 為真值。"""

    DISTINCT = "distinct"
    COINCIDES = "coincides"
    VACUOUS = "vacuous"

    def __bool__(self):
        return self is not SuffixVerdict.COINCIDES


def inverse(g):
    """回傳生成元的逆元。"""
    return Generator(g).inverse


def validate_word(w):
    """
    檢查字詞是否為非空的 0/1 字串。

    Args:
        w (str): 字詞

    Returns:
        str: 原字詞

    Raises:
        InvalidWordError: 空字詞或含有 0/1 以外的字元
    """
    if not isinstance(w, str) or not w:
        raise InvalidWordError(f"word must be a nonempty binary string, got {w!r}")
    if w.strip("01"):
        raise InvalidWordError(f"word must contain only 0 and 1, got {w!r}")
    return w


def apply(g, w):
    """
    計算 g(w)。

    Args:
        g (Generator | str): 生成元
        w (str): 字詞

    Returns:
        str: 等長的字詞 g(w)

    Raises:
        InvalidWordError: 字詞不合法
    """
    validate_word(w)
    state = Generator(g).value
    out = []
    for i, letter in enumerate(w):
        state, emitted = _TRANSITIONS[(state, letter)]
        out.append(emitted)
        if state is None:
            out.append(w[i + 1:])
            break
    return "".join(out)


def apply_sequence(gs, w):
    """
    依序套用多個生成元，串列中第一個最先作用。

    apply_sequence([a, b⁻¹], w) = b⁻¹(a(w))。

    Args:
        gs (list): 生成元串列
        w (str): 起始字詞

    Returns:
        str: 結果字詞
    """
    validate_word(w)
    for g in gs:
        w = apply(g, w)
    return w


def all_words(n):
    """依字典序列出 X^n 的所有字詞。"""
    return ["".join(letters) for letters in itertools.product("01", repeat=n)]


def build_schreier(n):
    """
    建構 Schreier 圖 Γ_n。

    頂點為 X^n 的 2^n 個字詞（字典序），每個頂點的埠為 (a, a^-1, b, b^-1)，
    半邊 (v, s) 與 (s(v), s⁻¹) 配對；a 的不動點形成 (v,a)↔(v,a^-1) 的自環。

    Args:
        n (int): 層級，1 ≤ n ≤ 上限

    Returns:
        RotationGraph: Γ_n

    Raises:
        CapExceededError: n 超過配置上限
    """
    GlobalConfig().check_level(n, "level")
    words = all_words(n)
    rot = {}
    for v in words:
        for g in Generator:
            rot[(v, g.value)] = (apply(g, v), g.inverse.value)
    logger.debug("built Gamma_%d with %d vertices", n, len(words))
    return RotationGraph(words, Constants.GENERATOR_NAMES, rot, name=f"Gamma_{n}")


def suffix_distinct_check(r, v):
    """
    檢查 a(0^r v) 與 b(0^r v) 的最後 |v| 個字母是否都不等於 v。

    Args:
        r (int): 前綴長度
        v (str): 字詞

    Returns:
        SuffixVerdict: a(v) = v 時為 VACUOUS，否則為 DISTINCT 或 COINCIDES
    """
    validate_word(v)
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if apply(Generator.A, v) == v:
        return SuffixVerdict.VACUOUS
    word = "0" * r + v
    suffix_a = apply(Generator.A, word)[r:]
    suffix_b = apply(Generator.B, word)[r:]
    if suffix_a != v and suffix_b != v:
        return SuffixVerdict.DISTINCT
    return SuffixVerdict.COINCIDES


def orbit(w):
    """
    以廣度優先搜尋求 w 在 {a, a⁻¹, b, b⁻¹} 下的軌道。

    Returns:
        list[str]: 軌道中的字詞（字典序）
    """
    validate_word(w)
    seen = {w}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        for g in Generator:
            y = apply(g, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def action_permutation(gs, n):
    """
    生成元序列在 X^n 上誘導的置換，以字典序索引。

    Args:
        gs (list): 生成元串列（第一個最先作用）
        n (int): 字長

    Returns:
        sympy.combinatorics.Permutation
    """
    words = all_words(n)
    index = {w: i for i, w in enumerate(words)}
    return Permutation([index[apply_sequence(gs, w)] for w in words])


def action_order(gs, n):
    """生成元序列在 X^n 上作用的階。"""
    return action_permutation(gs, n).order()
