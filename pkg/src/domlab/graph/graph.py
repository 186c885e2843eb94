"""
Immutable simple undirected graphs over vertices 0..n-1

Adjacency is stored as one VertexSet per vertex. Edits and combinations return
new Graph values; nothing here mutates a graph after construction.
"""

import hashlib
import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from ..errors import GraphOperationError, VertexSetError
from .bitset import VertexSet, bit, full_mask, iter_members, lowest, popcount

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph

    Attributes:
        n: Vertex count (at least 1)
        adj: Open neighbourhood of each vertex as a bitset
        labels: Human-readable vertex names, e.g. "b_5"
        name: Constructor expression the graph came from, when known
    """
    n: int
    adj: Tuple[VertexSet, ...]
    labels: Tuple[str, ...] = ()
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphOperationError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise GraphOperationError(f"expected {self.n} adjacency sets, got {len(self.adj)}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(v) for v in range(self.n)))
        elif len(self.labels) != self.n:
            raise GraphOperationError(f"expected {self.n} labels, got {len(self.labels)}")

        universe = full_mask(self.n)
        for v, nbrs in enumerate(self.adj):
            if nbrs & ~universe:
                raise GraphOperationError(f"vertex {v} has neighbours outside 0..{self.n - 1}")
            if (nbrs >> v) & 1:
                raise GraphOperationError(f"self-loop at vertex {v}")
            for u in iter_members(nbrs):
                if not (self.adj[u] >> v) & 1:
                    raise GraphOperationError(f"edge ({v},{u}) is not symmetric")

        closed = tuple(nbrs | (1 << v) for v, nbrs in enumerate(self.adj))
        object.__setattr__(self, "_closed", closed)

    @property
    def closed(self) -> Tuple[VertexSet, ...]:
        """Closed neighbourhoods N[v]"""
        return self._closed  # type: ignore[attr-defined]

    @property
    def full(self) -> VertexSet:
        return full_mask(self.n)

    @property
    def edge_count(self) -> int:
        return sum(popcount(nbrs) for nbrs in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def neighbors(self, v: int) -> List[int]:
        return list(iter_members(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adj[u] >> v) & 1 == 1

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Edges (u, v) with u < v in lexicographic order"""
        for u in range(self.n):
            for v in iter_members(self.adj[u] >> (u + 1)):
                yield u, u + 1 + v

    def label(self, v: int) -> str:
        return self.labels[v]

    def vertex(self, name: str) -> int:
        """Resolve a vertex label or a decimal id"""
        try:
            return self.labels.index(name)
        except ValueError:
            pass
        if name.isdigit() and int(name) < self.n:
            return int(name)
        raise VertexSetError(f"unknown vertex {name!r}")

    def vertex_set(self, text: str) -> VertexSet:
        """Comma-separated labels or ids, e.g. "b_1,a_3,a_4"; braces are optional"""
        mask = 0
        for token in text.strip().strip("{}").split(","):
            token = token.strip()
            if token:
                mask |= bit(self.vertex(token))
        return mask

    def check_set(self, mask: VertexSet) -> VertexSet:
        if mask < 0 or mask & ~self.full:
            raise VertexSetError(f"vertex set {mask:#x} is not confined to 0..{self.n - 1}")
        return mask

    def renamed(self, name: Optional[str]) -> "Graph":
        return Graph(self.n, self.adj, self.labels, name)

    def __repr__(self) -> str:
        return f"<Graph {self.name or ''} n={self.n} m={self.edge_count}>"


def from_edges(
    n: int,
    edges: Iterable[Tuple[int, int]],
    labels: Optional[Sequence[str]] = None,
    name: Optional[str] = None,
) -> Graph:
    """Build a graph from an edge list; repeated edges are merged, self-loops rejected"""
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise GraphOperationError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphOperationError(f"edge ({u},{v}) outside 0..{n - 1}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj), tuple(labels) if labels else (), name)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """
    Cartesian product g □ h

    Vertex (u, v) gets id u * h.n + v; (u1,v1)~(u2,v2) iff u1 = u2 and v1~v2,
    or v1 = v2 and u1~u2.
    """
    edges = []
    for u in range(g.n):
        for v in range(h.n):
            here = u * h.n + v
            for w in iter_members(h.adj[v]):
                if w > v:
                    edges.append((here, u * h.n + w))
            for w in iter_members(g.adj[u]):
                if w > u:
                    edges.append((here, w * h.n + v))
    labels = [f"({g.labels[u]},{h.labels[v]})" for u in range(g.n) for v in range(h.n)]
    name = f"cart({g.name},{h.name})" if g.name and h.name else None
    return from_edges(g.n * h.n, edges, labels, name)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Block-diagonal union; labels are prefixed 1. and 2. per operand"""
    # Graph construction already rejects zero-vertex operands
    adj = tuple(g.adj) + tuple(nbrs << g.n for nbrs in h.adj)
    labels = tuple(f"1.{x}" for x in g.labels) + tuple(f"2.{x}" for x in h.labels)
    name = f"disjoint({g.name},{h.name})" if g.name and h.name else None
    return Graph(g.n + h.n, adj, labels, name)


def add_edge(g: Graph, u: int, v: int) -> Graph:
    if u == v:
        raise GraphOperationError(f"self-loop at vertex {u}")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphOperationError(f"edge ({u},{v}) outside 0..{g.n - 1}")
    if g.has_edge(u, v):
        raise GraphOperationError(f"edge ({u},{v}) already present")
    adj = list(g.adj)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return Graph(g.n, tuple(adj), g.labels, None)


def complement(g: Graph) -> Graph:
    universe = g.full
    adj = tuple(universe & ~g.closed[v] for v in range(g.n))
    return Graph(g.n, adj, g.labels, f"complement({g.name})" if g.name else None)


def order(g: Graph) -> int:
    return g.n


def min_degree(g: Graph) -> int:
    return min(g.degree(v) for v in range(g.n))


def max_degree(g: Graph) -> int:
    return max(g.degree(v) for v in range(g.n))


def is_connected(g: Graph) -> bool:
    seen = bit(0)
    frontier = bit(0)
    while frontier:
        grown = 0
        for v in iter_members(frontier):
            grown |= g.adj[v]
        frontier = grown & ~seen
        seen |= frontier
    return seen == g.full


def independence_number(g: Graph) -> int:
    """Exact maximum independent set size by branch and bound"""
    best = 0

    def search(candidates: VertexSet, size: int):
        nonlocal best
        if size + popcount(candidates) <= best:
            return
        if not candidates:
            best = size
            return
        v = lowest(candidates)
        # v has no neighbour among the candidates: taking it is never worse
        if not g.adj[v] & candidates:
            search(candidates & ~bit(v), size + 1)
            return
        search(candidates & ~g.closed[v], size + 1)
        search(candidates & ~bit(v), size)

    search(g.full, 0)
    return best


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by backtracking over colour counts"""
    for colours in range(1, g.n + 1):
        classes = [0] * colours
        if _colour(g, 0, classes, 0):
            return colours
    return g.n


def _colour(g: Graph, v: int, classes: List[VertexSet], used: int) -> bool:
    if v == g.n:
        return True
    # symmetry: a fresh colour is only tried once
    for c in range(min(used + 1, len(classes))):
        if classes[c] & g.adj[v]:
            continue
        classes[c] |= bit(v)
        if _colour(g, v + 1, classes, max(used, c + 1)):
            return True
        classes[c] &= ~bit(v)
    return False


def canonical_hash(g: Graph) -> str:
    """
    SHA-256 of the ordered adjacency

    Not invariant under relabelling: two isomorphic graphs numbered differently
    hash differently. Labels and names do not contribute.
    """
    payload = f"{g.n};" + ",".join(format(nbrs, "x") for nbrs in g.adj)
    return hashlib.sha256(payload.encode("ascii")).hexdigest()


def to_networkx(g: Graph) -> nx.Graph:
    graph = nx.Graph()
    for v in range(g.n):
        graph.add_node(v, label=g.labels[v])
    graph.add_edges_from(g.edges())
    return graph


def from_networkx(graph: nx.Graph, name: Optional[str] = None) -> Graph:
    """Convert, numbering nodes in the graph's own node order"""
    nodes = list(graph.nodes())
    index = {node: i for i, node in enumerate(nodes)}
    edges = [(index[u], index[v]) for u, v in graph.edges()]
    return from_edges(len(nodes), edges, [str(node) for node in nodes], name)
