"""Hypothesis strategies for graphs and vertex sets"""

from hypothesis import strategies as st

from domlab.graph.graph import from_edges


@st.composite
def small_graphs(draw, min_vertices=1, max_vertices=8):
    """Random simple graphs on up to max_vertices vertices"""
    n = draw(st.integers(min_value=min_vertices, max_value=max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return from_edges(n, edges, [f"v{i}" for i in range(n)], f"random:{n}")


@st.composite
def connected_graphs(draw, min_vertices=1, max_vertices=8):
    """Random connected graphs: a random spanning tree plus extra edges"""
    n = draw(st.integers(min_value=min_vertices, max_value=max_vertices))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(min_value=0, max_value=v - 1))
        edges.add((u, v))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    if pairs:
        edges.update(draw(st.lists(st.sampled_from(pairs), unique=True)))
    return from_edges(n, sorted(edges), [f"v{i}" for i in range(n)], f"connected:{n}")
