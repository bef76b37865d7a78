#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
圖乘積模組 (products.py)

用途：
    建構兩種圖乘積：
    1. 廣義替換乘積 Γ_n ⓖ Γ_r：在 Γ_n 的每個頂點放一份切開的 Γ_r（移除基點
       u₀ 上的 e_a、e_b 兩條邊），再以「提升邊」連接各份拷貝。r 的奇偶決定
       由 Γ_n 的哪個生成元驅動提升：r 為偶數時 a 邊由 a、b 邊由 b 驅動，
       r 為奇數時兩者互換。
    2. zig-zag 乘積 G₁ ⓩ G₂：小步、大步、小步三段組成的旋轉映射；
       G₂ 的頂點以名稱對應 G₁ 的埠。預設搭配固定標記的 C₄。

    另提供提升邊列舉、各葉收縮、交替路徑（a 與 b⁻¹ 交替）等檢查工具。

在整個應用中的角色：
    - covering.py 以本模組的乘積建立覆蓋資料
    - main.py 的 product 子命令輸出乘積圖與同構證書

關聯檔案：
    - basilica.py：生成元作用與 Γ_n
    - multigraph.py：RotationGraph
    - constants.py：C₄ 頂點與埠
"""

import logging
from collections import Counter

from basilica import Generator, all_words, apply, apply_sequence, build_schreier, validate_word
from config import GlobalConfig
from constants import Constants
from errors import GraphError
from multigraph import RotationGraph

logger = logging.getLogger(__name__)


def c4():
    """
    固定標記的 C₄：頂點 (a, b^-1, b, a^-1)，埠 (A, B)。

    旋轉映射：(a,B)↔(b^-1,B)、(b^-1,A)↔(b,A)、(b,B)↔(a^-1,B)、(a^-1,A)↔(a,A)。
    """
    pairs = [
        (("a", "B"), ("b^-1", "B")),
        (("b^-1", "A"), ("b", "A")),
        (("b", "B"), ("a^-1", "B")),
        (("a^-1", "A"), ("a", "A")),
    ]
    rot = {}
    for h, other in pairs:
        rot[h] = other
        rot[other] = h
    return RotationGraph(Constants.C4_VERTICES, Constants.C4_PORTS, rot, name="C4")


def lift_ports(r):
    """
    回傳驅動 a 提升與 b 提升的 Γ_n 生成元。

    Returns:
        dict: {"a": Generator, "b": Generator}
    """
    if r % 2 == 0:
        return {"a": Generator.A, "b": Generator.B}
    return {"a": Generator.B, "b": Generator.A}


def default_basepoint(r):
    return "0" * r


def generalized_replacement(n, r, basepoint=None):
    """
    建構 Γ_n ⓖ Γ_r。

    頂點為 (v, u)，v ∈ X^n、u ∈ X^r（v 為主序，各自字典序）。
    葉內半邊 ((v,u), p) 照抄 Γ_r：((v, p(u)), p⁻¹)；
    基點上的 a、b 半邊改接提升邊：
        ((v,u₀), a) ↔ ((L_a(v), a(u₀)), a⁻¹)
        ((v,u₀), b) ↔ ((L_b(v), b(u₀)), b⁻¹)

    Args:
        n (int): 第一因子層級
        r (int): 第二因子層級
        basepoint (str, optional): 基點 u₀，預設 0^r

    Returns:
        RotationGraph

    Raises:
        CapExceededError: n + r 超過上限
        InvalidWordError: 基點不是長度 r 的字詞
    """
    config = GlobalConfig()
    config.check_level(n, "n")
    config.check_level(r, "r")
    config.check_level(n + r, "n + r")
    u0 = default_basepoint(r) if basepoint is None else validate_word(basepoint)
    if len(u0) != r:
        raise GraphError(f"basepoint {u0!r} must have length {r}")

    outer = all_words(n)
    inner = build_schreier(r)
    vertices = [(v, u) for v in outer for u in inner.vertices]

    rot = {}
    for v in outer:
        for u in inner.vertices:
            for p in Constants.GENERATOR_NAMES:
                w, q = inner.rot(u, p)
                rot[((v, u), p)] = ((v, w), q)

    drivers = lift_ports(r)
    for port in ("a", "b"):
        g = drivers[port]
        back = Generator(port).inverse.value
        head = apply(port, u0)
        for v in outer:
            target = ((apply(g, v), head), back)
            rot[((v, u0), port)] = target
            rot[target] = ((v, u0), port)

    logger.debug("built Gamma_%d (g) Gamma_%d on %d vertices, basepoint %s", n, r, len(vertices), u0)
    return RotationGraph(vertices, Constants.GENERATOR_NAMES, rot, name=f"Gamma_{n} (g) Gamma_{r}")


def replacement_isomorphism(vertex):
    """f(v, u) = uv：Γ_n ⓖ Γ_r 到 Γ_{n+r} 的頂點映射。"""
    v, u = vertex
    return u + v


def lift_edges(G, basepoint=None):
    """
    列出 Γ_n ⓖ Γ_r 的提升邊（數量為 2^{n+1}）。

    Args:
        G (RotationGraph): 廣義替換乘積
        basepoint (str, optional): 基點，預設為全 0

    Returns:
        list: [(半邊, 對應半邊), ...]，起始半邊為 ((v,u₀), a) 或 ((v,u₀), b)
    """
    r = len(G.vertices[0][1])
    u0 = default_basepoint(r) if basepoint is None else basepoint
    out = []
    for (v, u) in G.vertices:
        if u != u0:
            continue
        for port in ("a", "b"):
            h = ((v, u), port)
            out.append((h, G.rot(*h)))
    return out


def sheet_contraction(G, basepoint=None):
    """
    將每一葉收縮成一點，只保留提升邊，埠改名為驅動的生成元。

    結果應與 Γ_n 埠對埠相同。

    Returns:
        RotationGraph: 頂點為 X^n
    """
    r = len(G.vertices[0][1])
    drivers = lift_ports(r)
    outer = sorted({v for v, _ in G.vertices})
    rot = {}
    for ((v, _), port), ((w, _), _) in lift_edges(G, basepoint):
        g = drivers[port]
        rot[(v, g.value)] = (w, g.inverse.value)
        rot[(w, g.inverse.value)] = (v, g.value)
    n = len(outer[0])
    return RotationGraph(outer, Constants.GENERATOR_NAMES, rot, name=f"contraction of Gamma_{n} (g) Gamma_{r}")


def alternation_ports(r):
    """
    交替路徑的埠序列：r 為偶數時 a, b⁻¹, a, …, a；奇數時 b, a⁻¹, b, …, b。
    共 2^{r+1} − 1 步。
    """
    if r % 2 == 0:
        first, second = "a", "b^-1"
    else:
        first, second = "b", "a^-1"
    return [first, second] * (2 ** r - 1) + [first]


def alternation_path(G, v, basepoint=None):
    """
    在 Γ_n ⓖ Γ_r 中從 (v, u₀) 出發，沿交替埠序列走出的頂點序列。

    Args:
        G (RotationGraph): 廣義替換乘積
        v (str): 葉的索引字詞
        basepoint (str, optional): 基點，預設 0^r

    Returns:
        list: 2^{r+1} 個頂點（含起點）
    """
    r = len(G.vertices[0][1])
    u0 = default_basepoint(r) if basepoint is None else basepoint
    x = (v, u0)
    G.index(x)
    path = [x]
    for port in alternation_ports(r):
        x, _ = G.rot(x, port)
        path.append(x)
    return path


def alternation_report(G, v, basepoint=None):
    """
    整理交替路徑的性質。

    Returns:
        dict: a_fixed、stays_in_sheet、visit_counts（葉內各頂點被走到的次數集合）、
              covers_sheet、endpoint、expected_endpoint、first_step_leaves
    """
    r = len(G.vertices[0][1])
    u0 = default_basepoint(r) if basepoint is None else basepoint
    path = alternation_path(G, v, u0)
    counts = Counter(path)
    in_sheet = [x for x in path if x[0] == v]
    expected_tail = apply("b", u0) if r % 2 == 0 else apply("a", u0)
    return {
        "a_fixed": apply("a", v) == v,
        "stays_in_sheet": len(in_sheet) == len(path),
        "covers_sheet": {u for (w, u) in in_sheet if w == v} == set(all_words(r)),
        "visit_counts": sorted(set(counts[x] for x in in_sheet)),
        "endpoint": path[-1],
        "expected_endpoint": (v, expected_tail),
        "first_step_leaves": path[1][0] != v,
    }


def _uniform_ports(G, what):
    alphabets = {G.ports(v) for v in G.vertices}
    if len(alphabets) != 1:
        raise GraphError(f"{what} must use the same port alphabet at every vertex")
    return next(iter(alphabets))


def zigzag_rotation_table(G1, G2, literal_return_label=False):
    """
    zig-zag 乘積的旋轉映射表。

    Rot₂(k,i) = (k′,i′)，Rot₁(v,k′) = (w,l′)，Rot₂(l′,j) = (l,j′)，
    則 ((v,k),(i,j)) ↦ ((w,l),(j′,i′))。
    literal_return_label=True 時改回傳 (j′,l′)，此表不是對合。

    Returns:
        tuple: (vertices, ports, rot)

    Raises:
        GraphError: G₂ 的頂點與 G₁ 的埠字母表不一致
    """
    alphabet1 = _uniform_ports(G1, "first factor")
    alphabet2 = _uniform_ports(G2, "second factor")
    if set(G2.vertices) != set(alphabet1) or len(G2) != len(alphabet1):
        raise GraphError(
            f"second factor vertices {list(G2.vertices)} must match first factor ports {list(alphabet1)}"
        )
    vertices = [(v, k) for v in G1.vertices for k in alphabet1]
    ports = [(i, j) for i in alphabet2 for j in alphabet2]
    rot = {}
    for (v, k) in vertices:
        for (i, j) in ports:
            k1, i1 = G2.rot(k, i)
            w, l1 = G1.rot(v, k1)
            l, j1 = G2.rot(l1, j)
            label = (j1, l1) if literal_return_label else (j1, i1)
            rot[((v, k), (i, j))] = ((w, l), label)
    return vertices, ports, rot


def zigzag(G1, G2=None):
    """
    zig-zag 乘積 G₁ ⓩ G₂（G₂ 預設為 C₄）。

    Returns:
        RotationGraph: d₂² 正則圖，頂點 (v, k)
    """
    if G2 is None:
        G2 = c4()
    vertices, ports, rot = zigzag_rotation_table(G1, G2)
    return RotationGraph(vertices, ports, rot, name=f"{G1.name} (z) {G2.name}")


def double_rotation_check(G):
    """
    旋轉映射套用兩次是否回到原半邊。

    Args:
        G (RotationGraph | Mapping): 圖或原始旋轉映射表

    Returns:
        bool
    """
    if isinstance(G, RotationGraph):
        return G.is_involution()
    return all(image != h and G.get(image) == h for h, image in G.items())


def schreier_zigzag(n):
    """Γ_n ⓩ C₄。"""
    return zigzag(build_schreier(n), c4())


def zigzag_cut_vertex(r):
    """
    zig-zag 覆蓋切邊的終點字詞 x。

    r 為偶數：x = a(b⁻¹a)^{2^r−1}(0^r) = b(0^r)；
    r 為奇數：x = b(a⁻¹b)^{2^r−1}(0^r) = a(0^r)。
    """
    u0 = default_basepoint(r)
    if r % 2 == 0:
        steps = ["a", "b^-1"] * (2 ** r - 1) + ["a"]
    else:
        steps = ["b", "a^-1"] * (2 ** r - 1) + ["b"]
    return apply_sequence(steps, u0)
