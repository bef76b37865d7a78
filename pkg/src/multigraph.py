#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
旋轉映射多重圖模組 (multigraph.py)

用途：
    以「半邊 (vertex, port) 上的對合」表示允許自環與重邊的多重圖，
    並提供鄰接矩陣、鄰域多重集、同構驗證、DOT / JSON 匯出入，
    以及轉成 networkx 圖做連通性判斷。

    表示法約定：
    - rot 是半邊上的對合，且沒有不動點；自環是同一頂點上兩個不同半邊的配對
    - 鄰接矩陣中自環對角線貢獻 2
    - 產生矩陣時頂點順序為明確參數，預設為圖本身的頂點順序

在整個應用中的角色：
    - Γ_n、C₄、C_m 以及所有乘積圖都是 RotationGraph
    - covering.py 與 zeta.py 透過 adjacency_matrix / neighbors 讀圖

關聯檔案：
    - basilica.py：build_schreier()
    - products.py：兩種圖乘積
    - covering.py：限制子圖與連通性
    - zeta.py：鄰接矩陣與非回溯矩陣
"""

import json
import logging
from collections import Counter

import networkx as nx
import numpy as np

from errors import GraphError

logger = logging.getLogger(__name__)


class RotationGraph:
    """
    以旋轉映射表示的多重圖（建構後不可變）。

    屬性：
        vertices (tuple): 頂點鍵的順序
        name (str): 圖名稱，用於 DOT 與報表
    """

    def __init__(self, vertices, ports, rot, name="", validate=True):
        """
        Args:
            vertices (Iterable): 頂點鍵（可雜湊）
            ports (Mapping | Sequence): 每個頂點的埠順序；給序列時所有頂點共用
            rot (Mapping): (v, p) -> (w, q)
            name (str): 圖名稱
            validate (bool): 是否檢查 rot 為無不動點的對合

        Raises:
            GraphError: validate 為真且旋轉映射不合法
        """
        self._vertices = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self._vertices)}
        if len(self._index) != len(self._vertices):
            raise GraphError("duplicate vertex keys")
        if isinstance(ports, dict):
            self._ports = {v: tuple(ports[v]) for v in self._vertices}
        else:
            shared = tuple(ports)
            self._ports = {v: shared for v in self._vertices}
        self._rot = dict(rot)
        self.name = name
        if validate:
            self._validate()

    def _validate(self):
        for v in self._vertices:
            if len(set(self._ports[v])) != len(self._ports[v]):
                raise GraphError(f"duplicate port at vertex {v!r}")
        expected = set(self.half_edges())
        if set(self._rot) != expected:
            missing = expected - set(self._rot)
            extra = set(self._rot) - expected
            raise GraphError(f"rotation domain mismatch: missing={sorted(map(repr, missing))[:3]} "
                             f"extra={sorted(map(repr, extra))[:3]}")
        for h, image in self._rot.items():
            if image not in self._rot:
                raise GraphError(f"rotation of {h!r} leaves the graph: {image!r}")
            if image == h:
                raise GraphError(f"half-edge {h!r} is fixed by the rotation")
            if self._rot[image] != h:
                raise GraphError(f"rotation is not an involution at {h!r}")

    @property
    def vertices(self):
        return self._vertices

    def __len__(self):
        return len(self._vertices)

    def __contains__(self, v):
        return v in self._index

    def __repr__(self):
        return f"RotationGraph(name={self.name!r}, |V|={len(self)}, |E|={self.num_edges})"

    def index(self, v):
        """頂點在預設順序中的位置。"""
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def ports(self, v):
        """頂點 v 的埠順序。"""
        try:
            return self._ports[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def rot(self, v, p):
        """旋轉映射 Rot(v, p) = (w, q)。"""
        try:
            return self._rot[(v, p)]
        except KeyError:
            raise GraphError(f"unknown half-edge {(v, p)!r}") from None

    def rotation_table(self):
        """旋轉映射的字典拷貝。"""
        return dict(self._rot)

    def half_edges(self):
        """依頂點順序、埠順序列出所有半邊。"""
        return [(v, p) for v in self._vertices for p in self._ports[v]]

    def edges(self):
        """每條邊以 (h, rot(h)) 列出一次，h 為依半邊順序最先出現者。"""
        seen = set()
        out = []
        for h in self.half_edges():
            if h in seen:
                continue
            other = self._rot[h]
            seen.add(h)
            seen.add(other)
            out.append((h, other))
        return out

    @property
    def num_edges(self):
        return sum(len(ps) for ps in self._ports.values()) // 2

    def degree(self, v):
        return len(self.ports(v))

    def is_regular(self):
        return len({len(ps) for ps in self._ports.values()}) <= 1

    def is_involution(self):
        """檢查 rot∘rot 是否為恆等（供未驗證建構的圖使用）。"""
        for h, image in self._rot.items():
            if image == h or self._rot.get(image) != h:
                return False
        return True


def resolve_order(G, order=None):
    """
    檢查並回傳頂點順序。

    Args:
        G (RotationGraph): 圖
        order (Sequence, optional): 頂點順序；None 時使用 G.vertices

    Returns:
        list: 頂點順序

    Raises:
        GraphError: 順序不完整、重複或含未知頂點
    """
    if order is None:
        return list(G.vertices)
    order = list(order)
    if len(order) != len(G) or set(order) != set(G.vertices):
        raise GraphError(f"vertex order must list each of the {len(G)} vertices exactly once")
    return order


def adjacency_matrix(G, order=None):
    """
    鄰接矩陣（numpy object 陣列，元素為 Python int）。

    非對角元素為兩頂點間的邊數；對角元素為自環數的兩倍。

    Args:
        G (RotationGraph): 圖
        order (Sequence, optional): 頂點順序

    Returns:
        numpy.ndarray: |V|×|V| 整數矩陣
    """
    order = resolve_order(G, order)
    pos = {v: i for i, v in enumerate(order)}
    size = len(order)
    M = np.zeros((size, size), dtype=object)
    for (v, p) in G.half_edges():
        w, _ = G.rot(v, p)
        M[pos[v], pos[w]] += 1
    return M


def neighbors(G, v):
    """
    鄰域多重集：所有埠的另一端頂點。

    Returns:
        collections.Counter: 頂點 -> 出現次數，總和為 degree(v)
    """
    return Counter(G.rot(v, p)[0] for p in G.ports(v))


class IsomorphismCheck:
    """verify_isomorphism 的結果，可直接當布林值使用。"""

    OK = "ok"
    NOT_BIJECTIVE = "not_bijective"
    ADJACENCY_MISMATCH = "adjacency_mismatch"
    PORT_MISMATCH = "port_mismatch"

    def __init__(self, reason, detail=""):
        self.reason = reason
        self.detail = detail

    @property
    def ok(self):
        return self.reason == self.OK

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"IsomorphismCheck({self.reason!r}, {self.detail!r})"


def _as_callable(f):
    if f is None:
        return lambda x: x
    if callable(f):
        return f
    return lambda x: f[x]


def verify_isomorphism(G, H, f, respect_ports=False, port_map=None):
    """
    驗證頂點映射 f 是否為 G 到 H 的多重圖同構。

    Args:
        G, H (RotationGraph): 兩個圖
        f (Mapping | Callable): 頂點映射
        respect_ports (bool): 是否也要求埠標記對應
        port_map (Mapping | Callable, optional): G 的埠到 H 的埠，預設為恆等

    Returns:
        IsomorphismCheck: reason 區分 not_bijective / adjacency_mismatch / port_mismatch
    """
    fv = _as_callable(f)
    image = {}
    for v in G.vertices:
        try:
            image[v] = fv(v)
        except (KeyError, ValueError) as e:
            return IsomorphismCheck(IsomorphismCheck.NOT_BIJECTIVE, f"f undefined at {v!r}: {e}")
    if len(G) != len(H):
        return IsomorphismCheck(IsomorphismCheck.NOT_BIJECTIVE, "vertex counts differ")
    targets = set(image.values())
    if len(targets) != len(G) or any(t not in H for t in targets):
        return IsomorphismCheck(IsomorphismCheck.NOT_BIJECTIVE, "f is not a bijection onto V(H)")

    for v in G.vertices:
        mapped = Counter({image[w]: k for w, k in neighbors(G, v).items()})
        if mapped != neighbors(H, image[v]):
            return IsomorphismCheck(IsomorphismCheck.ADJACENCY_MISMATCH, f"neighborhood of {v!r}")

    if respect_ports:
        fp = _as_callable(port_map)
        for (v, p) in G.half_edges():
            w, q = G.rot(v, p)
            try:
                got = H.rot(image[v], fp(p))
            except GraphError:
                return IsomorphismCheck(IsomorphismCheck.PORT_MISMATCH, f"port {p!r} missing at {image[v]!r}")
            if got != (image[w], fp(q)):
                return IsomorphismCheck(IsomorphismCheck.PORT_MISMATCH, f"half-edge {(v, p)!r}")
    return IsomorphismCheck(IsomorphismCheck.OK)


def vertex_label(v):
    """頂點鍵的文字形式：字串原樣，tuple 以 (x,y) 表示。"""
    if isinstance(v, tuple):
        return "(" + ",".join(vertex_label(x) for x in v) + ")"
    return str(v)


def _dot_quote(text):
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(G):
    """
    輸出 DOT 文字。每條邊（含自環、重邊）一個敘述，埠標記為邊屬性。

    Returns:
        str: 以換行結尾的 DOT 文字
    """
    lines = [f"graph {_dot_quote(G.name or 'G')} {{"]
    for v in G.vertices:
        lines.append(f"  {_dot_quote(vertex_label(v))};")
    for (v, p), (w, q) in G.edges():
        lines.append(
            f"  {_dot_quote(vertex_label(v))} -- {_dot_quote(vertex_label(w))} "
            f"[taillabel={_dot_quote(p)}, headlabel={_dot_quote(q)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


def _from_jsonable(x):
    if isinstance(x, list):
        return tuple(_from_jsonable(y) for y in x)
    return x


def to_json_dict(G):
    """
    JSON 圖格式：{"vertices": [...], "ports": {...}, "rot": [[[v,p],[w,q]], ...]}。

    每個對合配對只列一次（較小的半邊在前），配對依字典序排序；tuple 以 list 表示。
    """
    pairs = []
    for h, other in G.edges():
        a, b = json.dumps(_jsonable(h)), json.dumps(_jsonable(other))
        pair = (h, other) if a <= b else (other, h)
        pairs.append([_jsonable(pair[0]), _jsonable(pair[1])])
    pairs.sort(key=json.dumps)
    return {
        "vertices": [_jsonable(v) for v in G.vertices],
        "ports": {vertex_label(v): list(G.ports(v)) for v in G.vertices},
        "rot": pairs,
    }


def to_json_text(G):
    """JSON 文字（固定縮排、鍵順序），供 CLI 與檔案輸出。"""
    return json.dumps(to_json_dict(G), ensure_ascii=False, indent=2) + "\n"


def from_json_dict(doc, name=""):
    """
    由 JSON 圖格式還原 RotationGraph。

    Raises:
        GraphError: 缺少欄位或旋轉映射不合法
    """
    try:
        vertices = [_from_jsonable(v) for v in doc["vertices"]]
        labels = {vertex_label(v): v for v in vertices}
        ports = {labels[k]: tuple(_from_jsonable(p) for p in ps) for k, ps in doc["ports"].items()}
        rot = {}
        for left, right in doc["rot"]:
            h, other = _from_jsonable(left), _from_jsonable(right)
            rot[h] = other
            rot[other] = h
    except (KeyError, TypeError, ValueError) as e:
        raise GraphError(f"malformed graph document: {e}") from None
    missing = [v for v in vertices if v not in ports]
    if missing:
        raise GraphError(f"ports missing for vertices {missing[:3]!r}")
    return RotationGraph(vertices, ports, rot, name=name)


def cycle_graph(m):
    """
    環圖 C_m，頂點 0..m-1，埠 "+"（往下一個）與 "-"（往上一個）。

    m = 1 為單一頂點帶一個自環，m = 2 為兩頂點間的雙重邊。
    """
    if m < 1:
        raise GraphError(f"cycle length must be >= 1, got {m}")
    rot = {}
    for i in range(m):
        j = (i + 1) % m
        rot[(i, "+")] = (j, "-")
        rot[(j, "-")] = (i, "+")
    return RotationGraph(range(m), ("+", "-"), rot, name=f"C_{m}")


def to_networkx(G):
    """轉成 networkx.MultiGraph，每條邊以起始半邊為 key。"""
    nxg = nx.MultiGraph()
    nxg.add_nodes_from(G.vertices)
    for (v, p), (w, q) in G.edges():
        nxg.add_edge(v, w, key=(v, p), ports=(p, q))
    return nxg


def is_connected(G):
    """圖是否連通（空圖視為不連通）。"""
    if len(G) == 0:
        return False
    return nx.is_connected(to_networkx(G))


def restriction(G, vertex_subset):
    """
    限制子圖 G|V′：保留兩端都在 V′ 內的邊。

    Returns:
        networkx.MultiGraph
    """
    subset = list(vertex_subset)
    for v in subset:
        G.index(v)
    return nx.MultiGraph(to_networkx(G).subgraph(subset))
