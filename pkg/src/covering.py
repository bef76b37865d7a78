#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
圖覆蓋模組 (covering.py)

用途：
    驗證無分歧的圖覆蓋、將覆蓋圖分成葉（sheet）、在切邊上取得 Frobenius 置換、
    以廣度優先閉包計算單值群（monodromy group）的階，並判斷正規性。

    支援四種覆蓋：
    - Γ_N | Γ_r：投影取長度 r 的前綴，葉為後綴
    - Γ_n ⓖ Γ_r | Γ_r：(v, u) ↦ u，葉為 v
    - Γ_N ⓩ C₄ | Γ_r ⓩ C₄：(w, s) ↦ (w 的前綴, s)，葉為 w 的後綴
    - 恆等覆蓋：單一葉

    置換一律以 sympy Permutation 表示，作用在葉的位置（0 起算），
    輸出為 1 起算的循環記號，恆等置換寫作 "(1)"。
    compose(f, g) 表示 f∘g，也就是 g 先作用。

在整個應用中的角色：
    - main.py 的 cover 子命令與 reference_suite.py 的覆蓋相關項目
    - zeta.py 的 Artin 矩陣以覆蓋的葉與群標記為輸入

關聯檔案：
    - products.py：兩種圖乘積
    - basilica.py：Γ_n
    - multigraph.py：鄰域、限制子圖
    - config.py：monodromy_cap
"""

import logging
import re
from collections import Counter, deque
from dataclasses import dataclass, field, replace

import networkx as nx
from sympy.combinatorics import Permutation, PermutationGroup

from basilica import all_words, apply, build_schreier
from config import GlobalConfig
from constants import Constants
from errors import CoverError
from multigraph import RotationGraph, neighbors, restriction, vertex_label
from products import (
    default_basepoint,
    generalized_replacement,
    schreier_zigzag,
    zigzag_cut_vertex,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CutEdge:
    """底圖中被切開的邊，以起點半邊 (tail, port) 定向。"""

    name: str
    tail: object
    port: object


@dataclass(frozen=True)
class CoverSpec:
    """
    覆蓋資料。

    屬性：
        cover (RotationGraph): 覆蓋圖
        base (RotationGraph): 底圖
        proj (dict): 覆蓋頂點 -> 底圖頂點
        sheet_of (dict): 覆蓋頂點 -> 葉鍵
        sheet_keys (tuple): 葉鍵的順序（決定置換的位置編號）
        cut_edges (tuple[CutEdge]): 切邊
        group_labels (dict | None): 葉鍵 -> 群元素名稱（Artin 矩陣使用）
        name (str): 報表用名稱
    """

    cover: RotationGraph
    base: RotationGraph
    proj: dict
    sheet_of: dict
    sheet_keys: tuple
    cut_edges: tuple
    group_labels: dict = None
    name: str = ""
    _fiber: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        fiber = {}
        for x in self.cover.vertices:
            if x not in self.proj or x not in self.sheet_of:
                raise CoverError(f"cover vertex {x!r} has no projection or sheet")
            key = (self.proj[x], self.sheet_of[x])
            if key in fiber:
                raise CoverError(f"sheet {key[1]!r} meets the fiber of {key[0]!r} twice")
            fiber[key] = x
        object.__setattr__(self, "_fiber", fiber)

    @property
    def degree(self):
        return len(self.sheet_keys)

    def fiber_point(self, base_vertex, sheet):
        """底圖頂點在指定葉上的覆蓋頂點。"""
        try:
            return self._fiber[(base_vertex, sheet)]
        except KeyError:
            raise CoverError(f"no fiber point over {base_vertex!r} on sheet {sheet!r}") from None

    def sheet_vertices(self, sheet):
        """某一葉的覆蓋頂點（依底圖頂點順序）。"""
        return [self.fiber_point(b, sheet) for b in self.base.vertices]

    def with_sheet_order(self, order):
        """
        回傳以新葉順序排列的覆蓋資料。

        Raises:
            CoverError: order 不是原葉鍵的重新排列
        """
        order = tuple(order)
        if sorted(order) != sorted(self.sheet_keys) or len(set(order)) != len(order):
            raise CoverError(f"sheet order must permute {list(self.sheet_keys)}")
        return replace(self, sheet_keys=order)


class GroupOrder(int):
    """群的階；exact 為 False 時代表閉包超過上限，數值只是下界。"""

    def __new__(cls, value, exact=True):
        obj = super().__new__(cls, value)
        obj.exact = exact
        return obj


# ===== 覆蓋的建構 =====

def _cut_edges_at(tail, ports):
    return tuple(CutEdge(f"e_{p}", tail, p) for p in ports)


def schreier_cover(n_total, r):
    """
    Γ_{n_total} | Γ_r：投影取前綴，葉為長度 n_total − r 的後綴，切邊為 0^r 上的 a、b 半邊。
    """
    if n_total <= r:
        raise CoverError(f"cover level {n_total} must exceed base level {r}")
    cover, base = build_schreier(n_total), build_schreier(r)
    proj = {w: w[:r] for w in cover.vertices}
    sheet_of = {w: w[r:] for w in cover.vertices}
    sheets = tuple(all_words(n_total - r))
    u0 = default_basepoint(r)
    return CoverSpec(
        cover=cover,
        base=base,
        proj=proj,
        sheet_of=sheet_of,
        sheet_keys=sheets,
        cut_edges=_cut_edges_at(u0, ("a", "b")),
        group_labels=dict(Constants.TWO_SHEET_GROUP) if len(sheets) == 2 else None,
        name=f"Gamma_{n_total} | Gamma_{r}",
    )


def product_cover(n, r, basepoint=None):
    """Γ_n ⓖ Γ_r | Γ_r：(v, u) ↦ u，葉為 v。"""
    cover, base = generalized_replacement(n, r, basepoint), build_schreier(r)
    u0 = default_basepoint(r) if basepoint is None else basepoint
    sheets = tuple(all_words(n))
    return CoverSpec(
        cover=cover,
        base=base,
        proj={x: x[1] for x in cover.vertices},
        sheet_of={x: x[0] for x in cover.vertices},
        sheet_keys=sheets,
        cut_edges=_cut_edges_at(u0, ("a", "b")),
        group_labels=dict(Constants.TWO_SHEET_GROUP) if len(sheets) == 2 else None,
        name=f"Gamma_{n} (g) Gamma_{r} | Gamma_{r}",
    )


def zigzag_cut_edges(base, r):
    """
    Γ_r ⓩ C₄ 的四條切邊 e1..e4：
    (u₀,a⁻¹)→(x,a)、(u₀,a⁻¹)→(x,b)、(u₀,b⁻¹)→(x,a)、(u₀,b⁻¹)→(x,b)，
    埠由掃描 (u₀, ·) 的旋轉映射取得。
    """
    u0 = default_basepoint(r)
    x = zigzag_cut_vertex(r)
    targets = [
        ("e1", "a^-1", "a"),
        ("e2", "a^-1", "b"),
        ("e3", "b^-1", "a"),
        ("e4", "b^-1", "b"),
    ]
    edges = []
    for name, k, l in targets:
        tail = (u0, k)
        ports = [p for p in base.ports(tail) if base.rot(tail, p)[0] == (x, l)]
        if len(ports) != 1:
            raise CoverError(f"cut edge {name} from {tail!r} to {(x, l)!r} not found exactly once")
        edges.append(CutEdge(name, tail, ports[0]))
    return tuple(edges)


def zigzag_cover(n_total, r):
    """Γ_{n_total} ⓩ C₄ | Γ_r ⓩ C₄：(uv, s) ↦ (u, s)，葉為 v。"""
    if n_total <= r:
        raise CoverError(f"cover level {n_total} must exceed base level {r}")
    cover, base = schreier_zigzag(n_total), schreier_zigzag(r)
    sheets = tuple(all_words(n_total - r))
    return CoverSpec(
        cover=cover,
        base=base,
        proj={(w, s): (w[:r], s) for (w, s) in cover.vertices},
        sheet_of={(w, s): w[r:] for (w, s) in cover.vertices},
        sheet_keys=sheets,
        cut_edges=zigzag_cut_edges(base, r),
        group_labels=dict(Constants.TWO_SHEET_GROUP) if len(sheets) == 2 else None,
        name=f"Gamma_{n_total} (z) C4 | Gamma_{r} (z) C4",
    )


def _spanning_tree_edges(G):
    """以埠順序做廣度優先搜尋，回傳 (樹邊半邊集合, 造訪順序的樹邊串列)。"""
    if len(G) == 0:
        return set(), []
    root = G.vertices[0]
    seen = {root}
    queue = deque([root])
    tree = []
    used = set()
    while queue:
        v = queue.popleft()
        for p in G.ports(v):
            w, q = G.rot(v, p)
            if w in seen:
                continue
            seen.add(w)
            queue.append(w)
            tree.append((v, p))
            used.add((v, p))
            used.add((w, q))
    return used, tree


def identity_cover(G):
    """單一葉的恆等覆蓋；切邊為埠序廣度優先生成樹以外的所有邊。"""
    used, _ = _spanning_tree_edges(G)
    cut = []
    for h, _ in G.edges():
        if h not in used:
            cut.append(CutEdge(f"e{len(cut) + 1}", h[0], h[1]))
    return CoverSpec(
        cover=G,
        base=G,
        proj={v: v for v in G.vertices},
        sheet_of={v: "e" for v in G.vertices},
        sheet_keys=("e",),
        cut_edges=tuple(cut),
        group_labels={"e": "id"},
        name=f"{G.name} | {G.name}",
    )


# ===== 覆蓋的驗證 =====

def check_fibers(c):
    """
    檢查投影為滿射且每個纖維大小等於葉數。

    Raises:
        CoverError: 非滿射或纖維大小不一致
    """
    counts = Counter(c.proj[x] for x in c.cover.vertices)
    missing = [b for b in c.base.vertices if b not in counts]
    if missing:
        raise CoverError(f"projection is not surjective, missing {missing[:3]!r}")
    extra = [b for b in counts if b not in c.base]
    if extra:
        raise CoverError(f"projection leaves the base graph: {extra[:3]!r}")
    sizes = set(counts.values())
    if sizes != {c.degree}:
        raise CoverError(f"fiber sizes {sorted(sizes)} do not all equal the sheet count {c.degree}")
    for x in c.cover.vertices:
        if c.sheet_of[x] not in c.sheet_keys:
            raise CoverError(f"vertex {x!r} lies on unknown sheet {c.sheet_of[x]!r}")


def verify_covering(c):
    """
    鄰域雙射檢查：每個覆蓋頂點 x 的鄰域多重集經投影後等於 proj(x) 的鄰域多重集。

    Returns:
        bool

    Raises:
        CoverError: 投影非滿射或纖維大小不一致
    """
    check_fibers(c)
    for x in c.cover.vertices:
        projected = Counter({})
        for w, k in neighbors(c.cover, x).items():
            projected[c.proj[w]] += k
        if projected != neighbors(c.base, c.proj[x]):
            logger.info("covering fails at %s", vertex_label(x))
            return False
    return True


# ===== 置換 =====

def compose(f, g):
    """f∘g：g 先作用，再作用 f。"""
    return g * f


def cycle_notation(p):
    """1 起算的循環記號，恆等置換為 "(1)"。"""
    cycles = p.cyclic_form
    if not cycles:
        return "(1)"
    return "".join("(" + " ".join(str(i + 1) for i in cycle) + ")" for cycle in cycles)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycle_notation(text, degree):
    """
    解析 1 起算的循環記號。

    Args:
        text (str): 例如 "(2 3)(6 7)"
        degree (int): 置換作用的點數

    Returns:
        sympy.combinatorics.Permutation
    """
    stripped = _CYCLE.sub("", text).strip()
    if stripped:
        raise ValueError(f"unexpected text outside cycles: {stripped!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        points = [int(tok) - 1 for tok in body.replace(",", " ").split()]
        if any(p < 0 or p >= degree for p in points):
            raise ValueError(f"cycle ({body}) leaves 1..{degree}")
        if len(points) > 1:
            cycles.append(points)
    return Permutation(cycles, size=degree)


def _lift(c, x, port, head):
    y, _ = c.cover.rot(x, port)
    if c.proj[y] != head:
        raise CoverError(f"lift of port {port!r} at {x!r} misses the fiber over {head!r}")
    return y


def frobenius_permutations(c):
    """
    切邊上的 Frobenius 置換：葉 i 上的尾端纖維點沿同一埠提升到葉 j 時，i ↦ j。

    Returns:
        dict: 切邊名稱 -> sympy Permutation（依 c.sheet_keys 的位置）

    Raises:
        CoverError: 提升不落在頭端纖維，或不是雙射
    """
    position = {s: i for i, s in enumerate(c.sheet_keys)}
    perms = {}
    for e in c.cut_edges:
        head, _ = c.base.rot(e.tail, e.port)
        images = []
        for s in c.sheet_keys:
            y = _lift(c, c.fiber_point(e.tail, s), e.port, head)
            images.append(position[c.sheet_of[y]])
        if sorted(images) != list(range(c.degree)):
            raise CoverError(f"lifts of {e.name} are not a perfect matching between fibers")
        perms[e.name] = Permutation(images)
    return perms


def monodromy_order(perms, cap=None):
    """
    由置換生成的群的階（廣度優先閉包）。

    Args:
        perms (Iterable[Permutation]): 同一點集上的置換
        cap (int, optional): 閉包元素上限，預設讀取 monodromy_cap

    Returns:
        GroupOrder: 超過上限時 exact=False，數值為下界
    """
    perms = list(perms)
    if not perms:
        return GroupOrder(1)
    size = perms[0].size
    if any(p.size != size for p in perms):
        raise ValueError("permutations act on different point sets")
    if cap is None:
        cap = GlobalConfig().get("monodromy_cap", 1_000_000)
    order = _closure(perms, size, cap)
    if not order.exact:
        logger.warning("monodromy closure passed the cap %d; reporting a lower bound", cap)
    return order


def _closure(perms, size, cap):
    gens = [tuple(p.array_form) for p in perms]
    identity = tuple(range(size))
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    return GroupOrder(len(seen), exact=False)
                queue.append(y)
    return GroupOrder(len(seen))


def is_normal(c):
    """
    以切邊 Frobenius 置換判斷正規性：單值群的階等於葉數。

    Raises:
        CoverError: c 不是覆蓋
    """
    if not verify_covering(c):
        raise CoverError(f"{c.name} is not a covering")
    perms = list(frobenius_permutations(c).values())
    if not perms:
        return c.degree == 1
    # 閉包一超過葉數即可判定不正規
    order = _closure(perms, perms[0].size, c.degree)
    return order.exact and order == c.degree


def sheet_labeling_consistent(c):
    """非切邊的提升是否都留在同一葉內（葉是切開後生成子圖的提升）。"""
    cut = set()
    for e in c.cut_edges:
        cut.add((e.tail, e.port))
        cut.add(c.base.rot(e.tail, e.port))
    for (x, p) in c.cover.half_edges():
        if (c.proj[x], p) in cut:
            continue
        y, _ = c.cover.rot(x, p)
        if c.sheet_of[y] != c.sheet_of[x]:
            return False
    return True


@dataclass
class TreeMonodromy:
    """與葉標記無關的單值群資料。"""

    permutations: dict
    order: GroupOrder
    transitive: bool

    @property
    def regular(self):
        degree = next(iter(self.permutations.values())).size if self.permutations else 1
        return self.transitive and self.order.exact and self.order == degree


def tree_monodromy(c):
    """
    沿底圖的埠序廣度優先生成樹提升出新的葉，再由每條非樹邊取得置換。

    Returns:
        TreeMonodromy
    """
    check_fibers(c)
    used, tree = _spanning_tree_edges(c.base)
    root = c.base.vertices[0]
    lifts = []
    for s in c.sheet_keys:
        lifted = {root: c.fiber_point(root, s)}
        for (v, p) in tree:
            head, _ = c.base.rot(v, p)
            lifted[head] = _lift(c, lifted[v], p, head)
        lifts.append(lifted)
    new_sheet = {}
    for i, lifted in enumerate(lifts):
        for x in lifted.values():
            if x in new_sheet:
                raise CoverError(f"tree lifts overlap at {x!r}")
            new_sheet[x] = i
    perms = {}
    for h, _ in c.base.edges():
        if h in used:
            continue
        v, p = h
        head, _ = c.base.rot(v, p)
        images = [new_sheet[_lift(c, lifted[v], p, head)] for lifted in lifts]
        perms[f"{vertex_label(v)}:{p}"] = Permutation(images)
    if perms:
        group = PermutationGroup(list(perms.values()))
        transitive = group.is_transitive() if c.degree > 1 else True
    else:
        transitive = c.degree == 1
    return TreeMonodromy(perms, monodromy_order(perms.values()), transitive)


def is_regular_cover(c):
    """與葉標記無關的正規性：單值群可遞且階等於葉數。"""
    return tree_monodromy(c).regular


# ===== 甲板變換 =====

def flip_last_letter(word):
    """翻轉字詞的最後一個字母。"""
    return word[:-1] + ("1" if word[-1] == "0" else "0")


def schreier_deck_map(c):
    """Γ_N 覆蓋上的 σ：翻轉最後一個字母。"""
    return {w: flip_last_letter(w) for w in c.cover.vertices}


def zigzag_deck_map(c):
    """Γ_N ⓩ C₄ 覆蓋上的 Σ(w, s) = (σ(w), s)。"""
    return {(w, s): (flip_last_letter(w), s) for (w, s) in c.cover.vertices}


def verify_deck_map(c, Sigma, claimed_order=None):
    """
    檢查 Sigma 是覆蓋圖的自同構、proj∘Sigma = proj，且（若給定）階為 claimed_order。

    Args:
        c (CoverSpec): 覆蓋
        Sigma (Mapping | Callable): 覆蓋頂點映射
        claimed_order (int, optional): 宣稱的階

    Returns:
        bool
    """
    fv = Sigma if callable(Sigma) else Sigma.__getitem__
    try:
        image = {x: fv(x) for x in c.cover.vertices}
    except KeyError:
        return False
    if set(image.values()) != set(c.cover.vertices):
        return False
    if any(c.proj[image[x]] != c.proj[x] for x in c.cover.vertices):
        return False
    for x in c.cover.vertices:
        mapped = Counter()
        for w, k in neighbors(c.cover, x).items():
            mapped[image[w]] += k
        if mapped != neighbors(c.cover, image[x]):
            return False
    if claimed_order is not None:
        index = {x: i for i, x in enumerate(c.cover.vertices)}
        perm = Permutation([index[image[x]] for x in c.cover.vertices])
        if perm.order() != claimed_order:
            return False
    return True


# ===== 葉的連通性 =====

def sheet_connectivity(c, sheet_key):
    """限制子圖 cover|sheet 是否連通。"""
    if sheet_key not in c.sheet_keys:
        raise CoverError(f"unknown sheet {sheet_key!r}")
    sub = restriction(c.cover, c.sheet_vertices(sheet_key))
    return sub.number_of_nodes() > 0 and nx.is_connected(sub)


def sheet_table(c):
    """
    各葉的摘要列：位置、葉鍵、a 是否固定葉鍵、限制子圖是否連通、連通分量數。

    Returns:
        list[dict]
    """
    rows = []
    for i, s in enumerate(c.sheet_keys):
        sub = restriction(c.cover, c.sheet_vertices(s))
        rows.append({
            "position": i + 1,
            "sheet": s,
            "a_fixed": apply("a", s) == s if s and set(s) <= {"0", "1"} else None,
            "connected": nx.is_connected(sub),
            "components": nx.number_connected_components(sub),
        })
    return rows


# ===== 報表 =====

def conjecture_check(base_n, cover_n):
    """
    比較 Γ_cover | Γ_base 與 Γ_cover ⓩ C₄ | Γ_base ⓩ C₄ 的正規性（經驗檢查）。

    zig-zag 覆蓋同時以切邊準則與生成樹準則判斷；兩者不一致或兩覆蓋結論
    不一致時 flagged 為真。

    Returns:
        dict
    """
    schreier = schreier_cover(cover_n, base_n)
    zz = zigzag_cover(cover_n, base_n)
    s_order = monodromy_order(frobenius_permutations(schreier).values())
    z_order = monodromy_order(frobenius_permutations(zz).values())
    s_normal = is_normal(schreier)
    z_normal = is_normal(zz)
    tree = tree_monodromy(zz)
    report = {
        "base_level": base_n,
        "cover_level": cover_n,
        "sheets": schreier.degree,
        "schreier": {"normal": s_normal, "monodromy_order": int(s_order), "exact": s_order.exact},
        "zigzag": {
            "normal": z_normal,
            "monodromy_order": int(z_order),
            "exact": z_order.exact,
            "sheet_labeling_consistent": sheet_labeling_consistent(zz),
            "regular_by_tree_lift": tree.regular,
            "tree_monodromy_order": int(tree.order),
        },
    }
    report["agree"] = s_normal == z_normal
    report["criteria_agree"] = z_normal == tree.regular
    report["flagged"] = not (report["agree"] and report["criteria_agree"])
    if report["flagged"]:
        logger.warning(
            "normality check flagged for base %d, cover %d: schreier=%s zigzag(cut)=%s zigzag(tree)=%s",
            base_n, cover_n, s_normal, z_normal, tree.regular,
        )
    return report


def cover_report(c):
    """
    JSON 報表：{cover, base, sheets, frobenius, monodromy_order, normal, ...}，數值為十進位字串。
    """
    valid = verify_covering(c)
    report = {
        "cover": c.cover.name,
        "base": c.base.name,
        "covering": valid,
        "sheets": [{"position": str(i + 1), "key": s} for i, s in enumerate(c.sheet_keys)],
    }
    if not valid:
        return report
    perms = frobenius_permutations(c)
    order = monodromy_order(perms.values())
    tree = tree_monodromy(c)
    report.update({
        "cut_edges": {
            e.name: {"tail": vertex_label(e.tail), "port": str(e.port)} for e in c.cut_edges
        },
        "frobenius": {name: cycle_notation(p) for name, p in perms.items()},
        "monodromy_order": str(int(order)),
        "monodromy_exact": order.exact,
        "normal": order.exact and order == c.degree,
        "sheet_labeling_consistent": sheet_labeling_consistent(c),
        "regular_by_tree_lift": tree.regular,
        "tree_monodromy_order": str(int(tree.order)),
        "sheet_connectivity": [
            {k: (str(v) if isinstance(v, int) and not isinstance(v, bool) else v) for k, v in row.items()}
            for row in sheet_table(c)
        ],
    })
    return report
