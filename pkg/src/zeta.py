#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Ihara zeta 與 Artin L 函數模組 (zeta.py)

用途：
    以精確整數運算計算：
    - 多項式矩陣的無分數（Bareiss）行列式
    - Ihara zeta 倒數 ζ_G(t)⁻¹ = (1−t²)^{|E|−|V|} det(I − A t + Q t²)，Q = diag(d − 1)
    - 非回溯（有向邊）矩陣 B 與 det(I − tB)，作為上式的獨立驗證
    - 正規覆蓋的 Artin 矩陣 A(g) 與一維特徵標的 L 函數倒數
    - 整數矩陣特徵多項式（多模數 Hessenberg 約化 + 中國剩餘定理）
    - 分解式 ζ_cover⁻¹ = ∏_χ L(χ)⁻¹ 與整除性檢查

在整個應用中的角色：
    - main.py 的 zeta 子命令
    - reference_suite.py 的 zeta 相關項目

關聯檔案：
    - polynomial.py：IntPolynomial
    - multigraph.py：鄰接矩陣與連通性
    - covering.py：覆蓋資料、正規性
    - config.py：nonbacktracking_cap
"""

import logging
import math

import numpy as np
from sympy import prevprime
from sympy.ntheory.modular import crt

from config import GlobalConfig
from covering import is_normal
from errors import CapExceededError, CoverError, GraphError
from multigraph import adjacency_matrix, is_connected, resolve_order
from polynomial import ONE, T, ZERO, IntPolynomial

logger = logging.getLogger(__name__)

_PRIME_CEILING = 2 ** 26


# ===== 行列式 =====

def det_fraction_free(M):
    """
    Bareiss 無分數消去法求多項式矩陣的行列式。

    每一步的除法都必須整除；不整除代表內部錯誤，直接丟出 NotDivisibleError。

    Args:
        M (list[list[IntPolynomial]]): 方陣（元素也可以是 int）

    Returns:
        IntPolynomial
    """
    size = len(M)
    A = [[IntPolynomial._coerce(x) for x in row] for row in M]
    if any(len(row) != size for row in A):
        raise GraphError("determinant requires a square matrix")
    if size == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(size - 1):
        if A[k][k].is_zero():
            pivot = next((i for i in range(k + 1, size) if not A[i][k].is_zero()), None)
            if pivot is None:
                return ZERO
            A[k], A[pivot] = A[pivot], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, size):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, size):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]).divexact(prev)
            row_i[k] = ZERO
        prev = akk
    return A[-1][-1] if sign > 0 else -A[-1][-1]


def bass_matrix(A, degrees):
    """
    I − A t + Q t²，Q = diag(degrees − 1)。

    Args:
        A (array-like): 整數方陣
        degrees (Sequence[int]): 各列對應頂點的度數

    Returns:
        list[list[IntPolynomial]]
    """
    size = len(degrees)
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            a = int(A[i][j])
            if i == j:
                row.append(IntPolynomial([1, -a, degrees[i] - 1]))
            else:
                row.append(IntPolynomial([0, -a]))
        out.append(row)
    return out


def _check_zeta_graph(G):
    if not is_connected(G):
        raise GraphError(f"{G.name or 'graph'} is not connected")
    low = [v for v in G.vertices if G.degree(v) < 2]
    if low:
        raise GraphError(f"{G.name or 'graph'} has vertices of degree < 2: {low[:3]!r}")


def _one_minus_t2_power(exponent):
    if exponent < 0:
        raise GraphError(f"negative (1 - t^2) exponent {exponent}")
    return (ONE - T * T) ** exponent


def ihara_reciprocal(G, order=None):
    """
    ζ_G(t)⁻¹ = (1−t²)^{|E|−|V|} det(I − A t + Q t²)。

    Raises:
        GraphError: 圖不連通或有度數小於 2 的頂點
    """
    _check_zeta_graph(G)
    order = resolve_order(G, order)
    A = adjacency_matrix(G, order)
    det = det_fraction_free(bass_matrix(A, [G.degree(v) for v in order]))
    return _one_minus_t2_power(G.num_edges - len(G)) * det


# ===== 非回溯矩陣 =====

def nonbacktracking_matrix(G):
    """
    有向邊（半邊）上的非回溯矩陣：B[e, f] = 1 當 head(e) = tail(f) 且 f ≠ reverse(e)。

    有向邊 (v, p) 從 v 出發，終點為 rot(v, p) 的頂點；自環提供兩條有向邊。

    Returns:
        (numpy.ndarray, list): 0/1 矩陣與有向邊順序

    Raises:
        CapExceededError: 有向邊數超過 nonbacktracking_cap
    """
    darts = G.half_edges()
    cap = GlobalConfig().get("nonbacktracking_cap", 1024)
    if len(darts) > cap:
        raise CapExceededError(
            f"non-backtracking matrix needs {len(darts)} darts, cap is {cap}",
            limit=cap, requested=len(darts),
        )
    index = {h: i for i, h in enumerate(darts)}
    B = np.zeros((len(darts), len(darts)), dtype=np.int64)
    for e in darts:
        head, back = G.rot(*e)
        for q in G.ports(head):
            f = (head, q)
            if f != (head, back):
                B[index[e], index[f]] = 1
    return B, darts


def nonbacktracking_reciprocal(G):
    """det(I − tB)，由 B 的特徵多項式反轉係數得到。"""
    _check_zeta_graph(G)
    B, darts = nonbacktracking_matrix(G)
    return char_poly(B).reversed(len(darts))


# ===== 特徵多項式（多模數） =====

# 內積長度上限：_MATMUL_CHUNK · (2^26)^2 < 2^63，分段後 int64 不會溢位
_MATMUL_CHUNK = 1024


def matmul_mod(A, B, p):
    """
    (A @ B) mod p，內積維度過長時分段累加並逐段取餘。

    Args:
        A, B (numpy.ndarray): int64 陣列，元素在 [0, p) 內，p < 2^26
        p (int): 模數

    Returns:
        numpy.ndarray
    """
    inner = A.shape[-1]
    if inner <= _MATMUL_CHUNK:
        return (A @ B) % p
    acc = (A[..., :_MATMUL_CHUNK] @ B[:_MATMUL_CHUNK]) % p
    for start in range(_MATMUL_CHUNK, inner, _MATMUL_CHUNK):
        stop = start + _MATMUL_CHUNK
        acc = (acc + (A[..., start:stop] @ B[start:stop]) % p) % p
    return acc


def _hessenberg_mod(A, p):
    """相似變換將 A 化為上 Hessenberg 形式（mod p）。"""
    H = np.array(A, dtype=np.int64) % p
    size = H.shape[0]
    for m in range(size - 2):
        nz = np.nonzero(H[m + 1:, m])[0]
        if nz.size == 0:
            continue
        i = m + 1 + int(nz[0])
        if i != m + 1:
            H[[i, m + 1], :] = H[[m + 1, i], :]
            H[:, [i, m + 1]] = H[:, [m + 1, i]]
        inv = pow(int(H[m + 1, m]), -1, p)
        u = (H[m + 2:, m] * inv) % p
        if not u.any():
            continue
        H[m + 2:, :] = (H[m + 2:, :] - np.outer(u, H[m + 1, :])) % p
        H[:, m + 1] = (H[:, m + 1] + matmul_mod(H[:, m + 2:], u, p)) % p
    return H


def modular_char_poly(A, p):
    """
    det(xI − A) mod p，係數由低次到高次（numpy int64 陣列，長度 n+1）。
    """
    H = _hessenberg_mod(A, p)
    size = H.shape[0]
    P = np.zeros((size + 1, size + 1), dtype=np.int64)
    P[0, 0] = 1
    for k in range(1, size + 1):
        new = np.zeros(size + 1, dtype=np.int64)
        new[1:] = P[k - 1, :-1]
        new = (new - int(H[k - 1, k - 1]) * P[k - 1]) % p
        if k >= 2:
            coefs = np.zeros(k - 1, dtype=np.int64)
            prod = 1
            for i in range(k - 2, -1, -1):
                prod = prod * int(H[i + 1, i]) % p
                if prod == 0:
                    break
                coefs[i] = int(H[i, k - 1]) * prod % p
            new = (new - matmul_mod(coefs, P[:k - 1], p)) % p
        P[k] = new
    return P[size]


def _coefficient_bound(A):
    """|c_k| ≤ ∏(1 + ‖row_i‖₂)，以整數上界計算。"""
    bound = 1
    for row in A:
        sq = sum(int(x) * int(x) for x in row)
        bound *= 2 + math.isqrt(sq)
    return bound


def char_poly(A):
    """
    整數矩陣的特徵多項式 det(xI − A)，精確整數係數。

    在 2^26 以下的質數上分別計算，再以中國剩餘定理（對稱剩餘）合併。

    Args:
        A (array-like): n×n 整數矩陣

    Returns:
        IntPolynomial: 變數為 x，係數由低次到高次
    """
    rows = [[int(x) for x in row] for row in np.asarray(A, dtype=object)]
    size = len(rows)
    if size == 0:
        return ONE
    if any(len(row) != size for row in rows):
        raise GraphError("characteristic polynomial requires a square matrix")
    target = 2 * _coefficient_bound(rows) + 1
    primes, residues = [], []
    modulus = 1
    p = _PRIME_CEILING
    while modulus < target:
        p = prevprime(p)
        primes.append(p)
        residues.append([int(c) for c in modular_char_poly(rows, p)])
        modulus *= p
    logger.debug("char_poly of size %d used %d primes", size, len(primes))
    coeffs = []
    for k in range(size + 1):
        value, _ = crt(primes, [res[k] for res in residues], symmetric=True)
        coeffs.append(int(value))
    return IntPolynomial(coeffs)


# ===== 群與特徵標 =====

class AbelianGroup:
    """
    有限交換群：元素名稱串列與乘法表。

    屬性：
        elements (tuple[str]): 元素，第一個為單位元
        table (dict): (g, h) -> gh
    """

    def __init__(self, elements, table):
        self.elements = tuple(elements)
        self.table = dict(table)
        self.identity = self.elements[0]
        for g in self.elements:
            if self.mul(self.identity, g) != g:
                raise ValueError(f"{self.identity!r} is not the identity")
            for h in self.elements:
                if self.mul(g, h) != self.mul(h, g):
                    raise ValueError("group is not abelian")

    def mul(self, g, h):
        return self.table[(g, h)]

    def __len__(self):
        return len(self.elements)


def cyclic_group(labels):
    """以 labels[k] = g^k 表示的循環群 ℤ/mℤ。"""
    m = len(labels)
    table = {(labels[i], labels[j]): labels[(i + j) % m] for i in range(m) for j in range(m)}
    return AbelianGroup(labels, table)


class Character:
    """
    一維 ±1 值特徵標。

    Raises:
        ValueError: 不是乘法的，或單位元的值不是 1
    """

    def __init__(self, group, values, name=""):
        self.group = group
        self.values = dict(values)
        self.name = name
        self.degree = 1
        if self.values.get(group.identity) != 1:
            raise ValueError("character must send the identity to 1")
        for g in group.elements:
            if self.values[g] not in (1, -1):
                raise ValueError("only ±1-valued characters are supported")
            for h in group.elements:
                if self.values[group.mul(g, h)] != self.values[g] * self.values[h]:
                    raise ValueError(f"character {name!r} is not multiplicative")

    def __call__(self, g):
        return self.values[g]

    def is_trivial(self):
        return all(v == 1 for v in self.values.values())

    def __repr__(self):
        return f"Character({self.name!r}, {self.values!r})"


def trivial_character(group):
    return Character(group, {g: 1 for g in group.elements}, name="trivial")


def characters(group):
    """
    群的所有一維 ±1 特徵標（群的指數須不超過 2 的循環群：階 1 或 2）。
    """
    if len(group) == 1:
        return [trivial_character(group)]
    if len(group) == 2:
        sigma = group.elements[1]
        return [
            trivial_character(group),
            Character(group, {group.identity: 1, sigma: -1}, name="sign"),
        ]
    raise ValueError("only groups of order 1 or 2 have all characters ±1-valued here")


def deck_group(c):
    """由覆蓋的 group_labels 建立群（元素依葉順序，單位元為 "id"）。"""
    if not c.group_labels:
        raise CoverError(f"{c.name} has no group labeling of its sheets")
    labels = [c.group_labels[s] for s in c.sheet_keys]
    if "id" in labels:
        labels.remove("id")
        labels.insert(0, "id")
    return cyclic_group(labels)


# ===== Artin 矩陣與 L 函數 =====

def artin_matrices(c, order=None):
    """
    A(g)[i][j]：單位葉上第 i 個底圖頂點的纖維點，到 g 葉上第 j 個底圖頂點纖維點的邊數
    （自環計 2）。同時驗證對所有 h 都有相同的邊數（群標記與覆蓋相容）。

    Args:
        c (CoverSpec): 正規覆蓋，需有 group_labels
        order (Sequence, optional): 底圖頂點順序

    Returns:
        dict: 群元素 -> numpy object 矩陣

    Raises:
        CoverError: 覆蓋不正規，或葉的標記不是群標記
    """
    if not is_normal(c):
        raise CoverError(f"{c.name} is not normal; Artin matrices need a Galois cover")
    group = deck_group(c)
    sheet_of_element = {c.group_labels[s]: s for s in c.sheet_keys}
    order = resolve_order(c.base, order)
    pos = {v: i for i, v in enumerate(order)}
    size = len(order)

    def counts(h):
        M = {g: np.zeros((size, size), dtype=object) for g in group.elements}
        element_of_sheet = {s: e for e, s in sheet_of_element.items()}
        for b in order:
            x = c.fiber_point(b, sheet_of_element[h])
            for p in c.cover.ports(x):
                y, _ = c.cover.rot(x, p)
                gh = element_of_sheet[c.sheet_of[y]]
                # 找出 g 使得 h·g = gh
                g = next(g for g in group.elements if group.mul(h, g) == gh)
                M[g][pos[b], pos[c.proj[y]]] += 1
        return M

    result = counts(group.identity)
    for h in group.elements[1:]:
        other = counts(h)
        for g in group.elements:
            if not np.array_equal(other[g], result[g]):
                raise CoverError(f"sheet labeling of {c.name} is not a group labeling (h={h}, g={g})")
    return result


def artin_reciprocal(c, chi, order=None):
    """
    L(t, χ)⁻¹ = (1−t²)^{|E_base|−|V_base|} det(I − A_χ t + Q t²)，A_χ = Σ_g χ(g) A(g)。
    """
    _check_zeta_graph(c.base)
    order = resolve_order(c.base, order)
    mats = artin_matrices(c, order)
    A_chi = sum(chi(g) * M for g, M in mats.items())
    det = det_fraction_free(bass_matrix(A_chi, [c.base.degree(v) for v in order]))
    return _one_minus_t2_power(c.base.num_edges - len(c.base)) * det


def twisted_adjacency(c, chi, order=None):
    """A_χ = Σ_g χ(g) A(g)。"""
    mats = artin_matrices(c, order)
    return sum(chi(g) * M for g, M in mats.items())


def factorization_check(c):
    """ζ_cover⁻¹ 是否等於所有特徵標 L 倒數的乘積。"""
    group = deck_group(c)
    product = ONE
    for chi in characters(group):
        product = product * artin_reciprocal(c, chi)
    return ihara_reciprocal(c.cover) == product


class DivisibilityResult:
    """divisibility_check 的結果：divisible 為真時 quotient 為精確商。"""

    def __init__(self, quotient, remainder):
        self.quotient = quotient
        self.remainder = remainder

    @property
    def divisible(self):
        return self.remainder.is_zero()

    def __bool__(self):
        return self.divisible

    def __repr__(self):
        return f"DivisibilityResult(divisible={self.divisible}, quotient={self.quotient!r})"


def divisibility_check(base_poly, cover_poly):
    """
    base_poly 是否整除 cover_poly；失敗以值（含餘式）回傳。
    """
    if base_poly.is_zero():
        raise ValueError("base polynomial must be nonzero")
    q, r = cover_poly.divmod(base_poly)
    return DivisibilityResult(q, r)
