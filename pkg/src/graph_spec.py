#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
圖規格解析與檔案載入模組 (graph_spec.py)

用途：
    解析命令列使用的圖規格字串，並建立對應的 RotationGraph 或覆蓋：
        gamma:<n>        Γ_n
        zigzag:<n>       Γ_n ⓩ C₄
        grp:<n>:<r>      Γ_n ⓖ Γ_r
        cycle:<m>        C_m
        file:<path>      JSON 圖格式，或 CSV / XLSX 旋轉表
    覆蓋以「覆蓋規格/底圖規格」或兩個獨立字串表示，例如 gamma:3/gamma:2。

    CSV / XLSX 旋轉表的欄位為 vertex, port, to_vertex, to_port，每個半邊一列
    （對合的兩個方向都要列出，或只列一次由載入器補齊）。

在整個應用中的角色：
    - main.py 所有子命令都透過本模組取得圖與覆蓋
    - RotationTableLoader 以 pandas 讀取表格檔（自動偵測編碼與分隔符號）

關聯檔案：
    - basilica.py / products.py / multigraph.py：建構圖
    - covering.py：建構覆蓋
    - constants.py：預設頂點順序
"""

import json
import logging
import os
import re
from dataclasses import dataclass

import pandas as pd

from basilica import build_schreier
from covering import identity_cover, product_cover, schreier_cover, zigzag_cover
from errors import CoverError, GraphError
from multigraph import RotationGraph, cycle_graph, from_json_dict
from products import generalized_replacement, schreier_zigzag

logger = logging.getLogger(__name__)

_SPEC = re.compile(r"^(gamma|zigzag|cycle):(\d+)$|^grp:(\d+):(\d+)$|^file:(.+)$")


@dataclass(frozen=True)
class GraphSpec:
    """解析後的圖規格。kind 為 gamma / zigzag / grp / cycle / file。"""

    kind: str
    params: tuple
    text: str


def parse_graph_spec(text):
    """
    解析圖規格字串。

    Raises:
        ValueError: 語法錯誤
    """
    text = text.strip()
    m = _SPEC.match(text)
    if not m:
        raise ValueError(
            f"bad graph spec {text!r}; expected gamma:<n>, zigzag:<n>, grp:<n>:<r>, cycle:<m> or file:<path>"
        )
    if m.group(1):
        return GraphSpec(m.group(1), (int(m.group(2)),), text)
    if m.group(3):
        return GraphSpec("grp", (int(m.group(3)), int(m.group(4))), text)
    return GraphSpec("file", (m.group(5),), text)


def build_graph(spec):
    """
    依規格建立圖。

    Args:
        spec (str | GraphSpec): 圖規格

    Returns:
        RotationGraph
    """
    if isinstance(spec, str):
        spec = parse_graph_spec(spec)
    if spec.kind == "gamma":
        return build_schreier(spec.params[0])
    if spec.kind == "zigzag":
        return schreier_zigzag(spec.params[0])
    if spec.kind == "grp":
        return generalized_replacement(*spec.params)
    if spec.kind == "cycle":
        return cycle_graph(spec.params[0])
    return RotationTableLoader(spec.params[0]).graph


def build_cover(cover_text, base_text=None):
    """
    由兩個規格（或以 "/" 連接的單一字串）建立覆蓋。

    支援的組合：gamma:N / gamma:r、grp:n:r / gamma:r、zigzag:N / zigzag:r，
    以及兩邊相同的恆等覆蓋。

    Raises:
        ValueError: 語法錯誤
        CoverError: 不支援的組合
    """
    if base_text is None:
        if "/" not in cover_text:
            raise ValueError(f"cover spec {cover_text!r} must look like <cover>/<base>")
        cover_text, base_text = cover_text.split("/", 1)
    cover, base = parse_graph_spec(cover_text), parse_graph_spec(base_text)
    if cover.text == base.text:
        return identity_cover(build_graph(cover))
    if cover.kind == "gamma" and base.kind == "gamma":
        return schreier_cover(cover.params[0], base.params[0])
    if cover.kind == "zigzag" and base.kind == "zigzag":
        return zigzag_cover(cover.params[0], base.params[0])
    if cover.kind == "grp" and base.kind == "gamma" and cover.params[1] == base.params[0]:
        return product_cover(*cover.params)
    raise CoverError(f"no covering construction for {cover.text} over {base.text}")


class RotationTableLoader:
    """
    旋轉表載入器：.json 使用 JSON 圖格式，.csv / .xlsx 以 pandas 讀取表格。

    屬性：
        file_path (str): 檔案路徑
        graph (RotationGraph): 載入結果
    """

    COLUMNS = ("vertex", "port", "to_vertex", "to_port")

    def __init__(self, file_path):
        self.file_path = file_path
        if not os.path.exists(file_path):
            raise GraphError(f"graph file not found: {file_path}")
        self.graph = self._load()

    def _detect_csv_encoding_and_sep(self):
        """
        偵測 CSV 的編碼（BOM）與分隔符號（Tab 或逗號）。

        Returns:
            tuple: (encoding, sep)
        """
        with open(self.file_path, 'rb') as f:
            raw = f.read(4)
        if raw[:2] in (b'\xff\xfe', b'\xfe\xff'):
            encoding = 'utf-16'
        elif raw[:3] == b'\xef\xbb\xbf':
            encoding = 'utf-8-sig'
        else:
            encoding = 'utf-8'
        with open(self.file_path, 'r', encoding=encoding, errors='replace') as f:
            first_line = f.readline()
        sep = '\t' if '\t' in first_line else ','
        return encoding, sep

    def _load(self):
        name = os.path.splitext(os.path.basename(self.file_path))[0]
        ext = os.path.splitext(self.file_path)[1].lower()
        if ext == '.json':
            with open(self.file_path, 'r', encoding='utf-8') as f:
                try:
                    doc = json.load(f)
                except json.JSONDecodeError as e:
                    raise GraphError(f"invalid JSON in {self.file_path}: {e}") from None
            return from_json_dict(doc, name=name)
        if ext == '.xlsx':
            frame = pd.read_excel(self.file_path, dtype=str, keep_default_na=False)
        elif ext == '.csv':
            encoding, sep = self._detect_csv_encoding_and_sep()
            frame = pd.read_csv(self.file_path, encoding=encoding, sep=sep, dtype=str, keep_default_na=False)
        else:
            raise GraphError(f"unsupported graph file type: {ext!r} (use .json, .csv or .xlsx)")
        logger.debug("rotation table %s loaded, %d rows", self.file_path, len(frame))
        return self.table_to_graph(frame, name)

    @classmethod
    def table_to_graph(cls, frame, name=""):
        """
        由 DataFrame 旋轉表建立圖；頂點與埠依首次出現的順序排列。

        Raises:
            GraphError: 缺欄位或旋轉表衝突
        """
        frame = frame.rename(columns=lambda c: str(c).strip().lower())
        missing = [c for c in cls.COLUMNS if c not in frame.columns]
        if missing:
            raise GraphError(f"rotation table is missing columns {missing}")
        vertices, ports, rot = [], {}, {}

        def note(v, p):
            if v not in ports:
                vertices.append(v)
                ports[v] = []
            if p not in ports[v]:
                ports[v].append(p)

        for row in frame[list(cls.COLUMNS)].itertuples(index=False):
            v, p, w, q = (str(x).strip() for x in row)
            h, other = (v, p), (w, q)
            for a, b in ((h, other), (other, h)):
                if rot.get(a, b) != b:
                    raise GraphError(f"conflicting rotation for {a!r}")
                rot[a] = b
            note(v, p)
            note(w, q)
        return RotationGraph(vertices, ports, rot, name=name)
