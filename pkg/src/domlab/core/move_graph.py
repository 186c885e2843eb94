"""
The move graph: dominating sets of one size joined by legal guard moves

Two dominating sets are adjacent when one guard slides along an edge to turn one
into the other. Nodes are stored in enumeration order and looked up through a
hash index; each node's neighbour list is derived from its single-guard slides.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Set, Tuple

from ..errors import CertificateError, VertexSetError
from ..graph.bitset import VertexSet, bit, format_set, iter_members, lowest, popcount
from ..graph.graph import Graph
from .kernel import Move, enumerate_dominating, is_dominating

logger = logging.getLogger(__name__)

DEFAULT_NODE_CAP = 50_000_000


class UnionFind:
    """Union-find with path compression, counting components as it merges"""

    def __init__(self, size: int):
        self.size = size
        self.parents = list(range(size))
        self.num_components = size

    def find(self, elem: int) -> int:
        root = elem
        while root != self.parents[root]:
            root = self.parents[root]
        # compress the path just walked
        while elem != root:
            self.parents[elem], elem = root, self.parents[elem]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        # lower root wins so labels stay deterministic
        if rb < ra:
            ra, rb = rb, ra
        self.parents[rb] = ra
        self.num_components -= 1

    def labels(self) -> List[int]:
        """Dense component ids, numbered by each component's lowest element"""
        dense: Dict[int, int] = {}
        result = []
        for i in range(self.size):
            root = self.find(i)
            if root not in dense:
                dense[root] = len(dense)
            result.append(dense[root])
        return result


@dataclass(frozen=True)
class FamilyCertificate:
    """
    A union of move-graph components offered as an autonomous family

    Attributes:
        k: Configuration size
        component_ids: Components making up the family
        representative: Lowest member set
        size: Total node count over the listed components
    """
    k: int
    component_ids: Tuple[int, ...]
    representative: VertexSet
    size: int

    def to_dict(self, labels: Optional[Tuple[str, ...]] = None) -> Dict:
        return {
            "k": self.k,
            "component_ids": list(self.component_ids),
            "representative": list(iter_members(self.representative)),
            "representative_labels": format_set(self.representative, labels),
            "size": self.size,
        }


class MoveGraph:
    """
    Materialized move graph for (g, k)

    Attributes:
        graph: Underlying graph
        k: Configuration size
        nodes: Dominating sets of size k in ascending order
        edges: Neighbour node ids per node, ascending
        component: Component id per node
        secure: Secure-dominating flag per node
        all_slides_dominating: True when every single-guard slide from the node
            stays dominating
    """

    def __init__(self, graph: Graph, k: int, cap: Optional[int] = DEFAULT_NODE_CAP):
        self.graph = graph
        self.k = k
        self.nodes: Tuple[VertexSet, ...] = tuple(enumerate_dominating(graph, k, cap))
        self.index: Dict[VertexSet, int] = {s: i for i, s in enumerate(self.nodes)}

        edges: List[Tuple[int, ...]] = []
        targets: List[VertexSet] = []
        slides_ok: List[bool] = []
        for s in self.nodes:
            nbrs = []
            reached = 0
            every_slide = True
            for w in iter_members(s):
                for v in iter_members(graph.adj[w] & ~s):
                    j = self.index.get(s ^ bit(w) ^ bit(v))
                    if j is None:
                        every_slide = False
                    else:
                        nbrs.append(j)
                        reached |= bit(v)
            edges.append(tuple(sorted(nbrs)))
            targets.append(reached)
            slides_ok.append(every_slide)

        self.edges: Tuple[Tuple[int, ...], ...] = tuple(edges)
        self._targets: Tuple[VertexSet, ...] = tuple(targets)
        self.all_slides_dominating: Tuple[bool, ...] = tuple(slides_ok)
        self.secure: Tuple[bool, ...] = tuple(
            targets[i] == graph.full & ~s for i, s in enumerate(self.nodes)
        )

        uf = UnionFind(len(self.nodes))
        for i, nbrs in enumerate(self.edges):
            for j in nbrs:
                if j > i:
                    uf.union(i, j)
        self.component: Tuple[int, ...] = tuple(uf.labels())
        self.component_count = uf.num_components

        self._members: List[List[int]] = [[] for _ in range(self.component_count)]
        for i, c in enumerate(self.component):
            self._members[c].append(i)
        self._component_secure = tuple(
            all(self.secure[i] for i in ids) for ids in self._members
        )

        logger.debug(
            f"Move graph k={k}: {len(self.nodes)} nodes, {self.component_count} components, "
            f"{sum(self._component_secure)} all-secure"
        )

    def __len__(self) -> int:
        return len(self.nodes)

    def node_id(self, s: VertexSet) -> int:
        try:
            return self.index[s]
        except KeyError:
            raise VertexSetError(
                f"{format_set(s, self.graph.labels)} is not a dominating set of size {self.k}"
            ) from None

    def members(self, cid: int) -> List[int]:
        if not 0 <= cid < self.component_count:
            raise CertificateError(f"no component {cid} at k={self.k}")
        return list(self._members[cid])

    def neighbours(self, i: int) -> Tuple[int, ...]:
        return self.edges[i]

    def slide_targets(self, i: int) -> VertexSet:
        """Unoccupied vertices some legal move from node i can reach"""
        return self._targets[i]

    def unanswerable(self, i: int) -> VertexSet:
        """Attacks at node i with no legal response"""
        return self.graph.full & ~self.nodes[i] & ~self._targets[i]

    def move_between(self, i: int, j: int) -> Move:
        s, t = self.nodes[i], self.nodes[j]
        return Move(lowest(s & ~t), lowest(t & ~s))

    def responses(self, i: int, attack: int) -> List[int]:
        """Neighbour ids of node i whose configuration holds the attacked vertex"""
        return [j for j in self.edges[i] if self.nodes[j] >> attack & 1]

    def is_component_secure(self, cid: int) -> bool:
        return self._component_secure[cid]

    def secure_components(self) -> List[int]:
        return [c for c in range(self.component_count) if self._component_secure[c]]

    def certificate(self, cid: int) -> FamilyCertificate:
        ids = self.members(cid)
        return FamilyCertificate(self.k, (cid,), self.nodes[ids[0]], len(ids))


def build_move_graph(g: Graph, k: int, cap: Optional[int] = DEFAULT_NODE_CAP) -> MoveGraph:
    if k < 1:
        raise ValueError("move graphs need k >= 1")
    return MoveGraph(g, k, cap)


def verify_family_sets(g: Graph, family: Iterable[VertexSet]) -> bool:
    """
    Check the three family conditions from first principles

    1. every member dominates;
    2. every attack on a member is answered by an adjacent member holding it;
    3. every dominating set adjacent to a member is itself a member.
    """
    sets: Set[VertexSet] = set(family)
    if not sets:
        return False
    sizes = {popcount(s) for s in sets}
    if len(sizes) != 1:
        return False

    for s in sets:
        if not is_dominating(g, s):
            return False
    for s in sets:
        answered = 0
        for w in iter_members(s):
            for v in iter_members(g.adj[w] & ~s):
                t = s ^ bit(w) ^ bit(v)
                if not is_dominating(g, t):
                    continue
                if t not in sets:
                    return False
                answered |= bit(v)
        if answered != g.full & ~s:
            return False
    return True


def verify_family(move_graph: MoveGraph, certificate: FamilyCertificate) -> bool:
    """Re-check a certificate without trusting the move graph's edges or secure flags"""
    if certificate.k != move_graph.k:
        raise CertificateError(f"certificate is for k={certificate.k}, move graph has k={move_graph.k}")
    family: List[VertexSet] = []
    for cid in certificate.component_ids:
        family.extend(move_graph.nodes[i] for i in move_graph.members(cid))
    if len(family) != certificate.size or certificate.representative not in family:
        return False
    return verify_family_sets(move_graph.graph, family)
