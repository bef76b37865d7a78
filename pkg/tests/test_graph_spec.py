# -*- coding: utf-8 -*-
import pandas as pd
import pytest

from covering import verify_covering
from errors import CoverError, GraphError
from graph_spec import GraphSpec, RotationTableLoader, build_cover, build_graph, parse_graph_spec
from multigraph import cycle_graph, to_json_text
from polynomial import ONE, T
from zeta import ihara_reciprocal


@pytest.mark.parametrize("text, kind, params", [
    ("gamma:3", "gamma", (3,)),
    (" zigzag:2 ", "zigzag", (2,)),
    ("grp:3:2", "grp", (3, 2)),
    ("cycle:5", "cycle", (5,)),
    ("file:graphs/g.json", "file", ("graphs/g.json",)),
])
def test_parse_graph_spec(text, kind, params):
    spec = parse_graph_spec(text)
    assert isinstance(spec, GraphSpec)
    assert (spec.kind, spec.params) == (kind, params)


@pytest.mark.parametrize("text", ["gamma", "gamma:x", "grp:3", "torus:2", ""])
def test_parse_graph_spec_rejects(text):
    with pytest.raises(ValueError):
        parse_graph_spec(text)


def test_build_graph():
    assert len(build_graph("gamma:3")) == 8
    assert len(build_graph("zigzag:1")) == 8
    assert len(build_graph("grp:2:1")) == 8
    assert build_graph("cycle:4").num_edges == 4


def test_build_graph_rejects_level_zero():
    with pytest.raises(ValueError):
        build_graph("gamma:0")


@pytest.mark.parametrize("text, degree", [
    ("gamma:3/gamma:2", 2),
    ("grp:3:2/gamma:2", 8),
    ("zigzag:2/zigzag:1", 2),
    ("gamma:2/gamma:2", 1),
])
def test_build_cover(text, degree):
    c = build_cover(text)
    assert c.degree == degree
    assert verify_covering(c)


def test_build_cover_from_two_arguments():
    assert build_cover("gamma:4", "gamma:2").degree == 4


@pytest.mark.parametrize("cover, base", [
    ("cycle:3", "gamma:1"),
    ("grp:3:1", "gamma:2"),
    ("gamma:2", "gamma:3"),
    ("zigzag:2", "gamma:1"),
])
def test_build_cover_rejects_unsupported_pairs(cover, base):
    with pytest.raises(CoverError):
        build_cover(cover, base)


def test_build_cover_needs_slash():
    with pytest.raises(ValueError):
        build_cover("gamma:3")


# ===== 旋轉表檔案 =====

def _cycle_rows(m):
    return [(f"v{i}", "+", f"v{(i + 1) % m}", "-") for i in range(m)]


def test_csv_with_bom_and_tabs(tmp_path):
    path = tmp_path / "triangle.csv"
    lines = ["vertex\tport\tto_vertex\tto_port"] + ["\t".join(r) for r in _cycle_rows(3)]
    path.write_bytes(b"\xef\xbb\xbf" + "\n".join(lines).encode("utf-8"))
    G = build_graph(f"file:{path}")
    assert G.name == "triangle"
    assert G.vertices == ("v0", "v1", "v2")
    assert G.ports("v0") == ("+", "-")
    assert ihara_reciprocal(G) == (ONE - T ** 3) ** 2


def test_csv_with_commas_and_both_directions(tmp_path):
    rows = _cycle_rows(2) + [(w, q, v, p) for v, p, w, q in _cycle_rows(2)]
    frame = pd.DataFrame(rows, columns=["Vertex", "Port", "To_Vertex", "To_Port"])
    path = tmp_path / "digon.csv"
    frame.to_csv(path, index=False)
    G = RotationTableLoader(str(path)).graph
    assert G.num_edges == 2
    assert ihara_reciprocal(G) == (ONE - T ** 2) ** 2


def test_xlsx_table(tmp_path):
    path = tmp_path / "square.xlsx"
    pd.DataFrame(_cycle_rows(4), columns=list(RotationTableLoader.COLUMNS)).to_excel(path, index=False)
    G = build_graph(f"file:{path}")
    assert len(G) == 4
    assert G.is_regular()


def test_json_file_roundtrip(tmp_path, zigzag1):
    path = tmp_path / "zz1.json"
    path.write_text(to_json_text(zigzag1), encoding="utf-8")
    G = build_graph(f"file:{path}")
    assert G.vertices == zigzag1.vertices
    assert G.rotation_table() == zigzag1.rotation_table()


def test_json_file_with_integer_vertices(tmp_path):
    path = tmp_path / "c5.json"
    path.write_text(to_json_text(cycle_graph(5)), encoding="utf-8")
    assert build_graph(f"file:{path}").rotation_table() == cycle_graph(5).rotation_table()


def test_missing_columns():
    frame = pd.DataFrame([("v0", "+", "v1")], columns=["vertex", "port", "to_vertex"])
    with pytest.raises(GraphError, match="missing columns"):
        RotationTableLoader.table_to_graph(frame)


def test_conflicting_rotation():
    frame = pd.DataFrame(
        [("x", "p", "y", "q"), ("x", "p", "z", "q")],
        columns=list(RotationTableLoader.COLUMNS),
    )
    with pytest.raises(GraphError, match="conflicting"):
        RotationTableLoader.table_to_graph(frame)


def test_file_errors(tmp_path):
    with pytest.raises(GraphError, match="not found"):
        build_graph(f"file:{tmp_path / 'nope.json'}")
    bad = tmp_path / "g.txt"
    bad.write_text("x", encoding="utf-8")
    with pytest.raises(GraphError, match="unsupported"):
        build_graph(f"file:{bad}")
    broken = tmp_path / "g.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(GraphError, match="invalid JSON"):
        build_graph(f"file:{broken}")
