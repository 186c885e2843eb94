"""Tests for graph generators and the named catalog graphs"""

import networkx as nx
import pytest

from domlab.graph import generators
from domlab.graph.generators import atlas_graphs, named_graphs, random_connected
from domlab.graph.graph import cartesian_product, is_connected, to_networkx
from domlab.graph.spec import generate


@pytest.mark.parametrize("spec, n, m", [
    ("path:4", 4, 3),
    ("complete:1", 1, 0),
    ("cycle:7", 7, 7),
    ("kbip:2,3", 5, 6),
    ("star:4", 5, 4),
    ("ladder:4", 8, 10),
    ("house", 6, 9),
    ("house+diag", 6, 10),
    ("house9", 9, 21),
    ("paw2", 5, 5),
    ("intro6", 6, 10),
    ("c5k3", 8, 8),
    ("c5k3+bridge", 8, 9),
    ("cone6", 6, 11),
])
def test_orders_and_sizes(spec, n, m):
    g = generate(spec)
    assert (g.n, g.edge_count) == (n, m)


@pytest.mark.parametrize("spec, n", [
    ("A:2", 10),
    ("A:3", 14),
    ("B:0,0", 7),
    ("B:2,1", 15),
    ("C:3,2", 7),
    ("D:2,3", 9),
    ("E:1,2", 8),
    ("F:2,1,3", 8),
])
def test_family_orders(spec, n):
    assert generate(spec).n == n


def test_family_a_edges_follow_definition():
    g = generate("A:2")
    a = [g.vertex(f"a_{i}") for i in range(1, 6)]
    b = [g.vertex(f"b_{i}") for i in range(1, 5)]
    c = g.vertex("c")
    # cliques 10 + 6, matching 4, extra cross edges for i=1 (j<=3) and i=2 (j<=2) not already matched: 3
    assert g.edge_count == 10 + 6 + 4 + 3 + 9
    assert g.degree(c) == 9
    assert g.has_edge(a[0], b[2])
    assert not g.has_edge(a[1], b[2])
    assert not g.has_edge(a[4], b[0])


def test_family_labels_read_like_definitions():
    assert "c^2_1" in generate("B:1,0").labels
    assert "b^1_2" in generate("D:2,1").labels


def test_ladder_is_product_of_paths():
    assert generate("ladder:5").adj == cartesian_product(generate("path:2"), generate("path:5")).adj


def test_house9_structure(house9):
    b5 = house9.vertex("b_5")
    assert house9.neighbors(b5) == [house9.vertex(f"b_{i}") for i in range(1, 5)]
    assert house9.has_edge(house9.vertex("b_1"), house9.vertex("a_2"))


def test_named_graphs_are_fresh_instances():
    graphs = named_graphs()
    assert set(graphs) == {"house", "house+diag", "house9", "paw2", "intro6", "c5k3", "c5k3+bridge", "cone6"}
    assert graphs["house"].name == "house"


def test_random_connected_is_seeded():
    g = random_connected(8, 0.3, seed=11)
    assert is_connected(g)
    assert g.adj == random_connected(8, 0.3, seed=11).adj


def test_atlas_counts():
    # unlabelled graphs on 1..4 vertices: 1 + 2 + 4 + 11
    assert sum(1 for _ in atlas_graphs(4)) == 18
    assert all(g.n == 3 for g in atlas_graphs(3, min_order=3))


def test_atlas_limit():
    with pytest.raises(ValueError):
        list(atlas_graphs(8))


def test_atlas_graphs_match_networkx_order():
    for g in atlas_graphs(4, min_order=4):
        index = int(g.name.split(":")[1])
        assert nx.is_isomorphic(to_networkx(g), nx.graph_atlas(index))


def test_cone6_is_the_smallest_a_construction():
    g = generate("cone6")
    assert g.adj == generators.family_a(1).adj
    assert g.neighbors(g.vertex("c")) == list(range(5))
    assert not g.has_edge(g.vertex("a_3"), g.vertex("b_1"))
    assert not g.has_edge(g.vertex("a_1"), g.vertex("b_2"))
