"""Tests for the graph constructor grammar"""

import pytest

from domlab.errors import GraphSpecError, ParameterRangeError
from domlab.graph.io import write_edge_list
from domlab.graph.spec import FAMILIES, GraphSpec, generate


@pytest.mark.parametrize("text", [
    "path:7",
    "kbip:2,3",
    "B:0,2",
    "F:1,2,3",
    "cart(complete:2,complete:5)",
    "disjoint(path:3,disjoint(cycle:5,complete:3))",
    "cart(kbip:2,3,path:2)",
    "house+diag",
    "c5k3+bridge",
])
def test_serialize_reproduces_text(text):
    assert GraphSpec.parse(text).serialize() == text


def test_whitespace_around_spec_is_ignored():
    assert GraphSpec.parse("  path:3 \n").serialize() == "path:3"


def test_generated_graph_is_named_by_spec():
    assert generate("cart(complete:2,complete:3)").name == "cart(complete:2,complete:3)"


def test_parsed_structure():
    spec = GraphSpec.parse("cart(path:2,kbip:1,4)")
    assert spec.kind == "cart"
    assert [operand.kind for operand in spec.operands] == ["path", "kbip"]
    assert spec.operands[1].params == (1, 4)


@pytest.mark.parametrize("text, position", [
    ("", 0),
    ("path", 4),
    ("path:x", 5),
    ("kbip:2", 6),
    ("cart(path:2)", 11),
    ("path:3)", 6),
    ("hexagon", 0),
])
def test_errors_report_position(text, position):
    with pytest.raises(GraphSpecError) as info:
        GraphSpec.parse(text)
    assert info.value.position == position
    assert f"column {position + 1}" in str(info.value)


@pytest.mark.parametrize("text", ["cycle:2", "path:0", "A:1", "C:1,1", "F:0,1,1"])
def test_parameters_below_minimum(text):
    with pytest.raises(ParameterRangeError):
        GraphSpec.parse(text)


def test_b_family_accepts_zero():
    assert generate("B:0,0").n == 7


def test_every_family_has_a_description():
    assert all(family.description for family in FAMILIES.values())


def test_file_spec_at_top_level(tmp_path):
    path = tmp_path / "g,1.txt"
    path.write_text(write_edge_list(generate("cycle:4")))
    g = generate(f"file:{path}")
    assert g.adj == generate("cycle:4").adj
    assert g.name == f"file:{path}"


def test_file_spec_inside_operator(tmp_path):
    path = tmp_path / "edge.txt"
    path.write_text("2 1\n0 1\n")
    g = generate(f"cart(file:{path},path:2)")
    assert g.adj == generate("ladder:2").adj
    assert g.name == f"cart(file:{path},path:2)"
