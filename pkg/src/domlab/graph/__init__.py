"""
Graph core: representation, generators, operations and serialization
"""

from .bitset import VertexSet, format_set, from_members, members, popcount
from .graph import (
    Graph,
    add_edge,
    canonical_hash,
    cartesian_product,
    chromatic_number,
    complement,
    disjoint_union,
    from_edges,
    independence_number,
    is_connected,
    max_degree,
    min_degree,
    order,
)
from .io import parse_edge_list, read_edge_list, to_dot, write_edge_list
from .spec import GraphSpec, generate

__all__ = [
    "VertexSet",
    "format_set",
    "from_members",
    "members",
    "popcount",
    "Graph",
    "add_edge",
    "canonical_hash",
    "cartesian_product",
    "chromatic_number",
    "complement",
    "disjoint_union",
    "from_edges",
    "independence_number",
    "is_connected",
    "max_degree",
    "min_degree",
    "order",
    "parse_edge_list",
    "read_edge_list",
    "to_dot",
    "write_edge_list",
    "GraphSpec",
    "generate",
]
