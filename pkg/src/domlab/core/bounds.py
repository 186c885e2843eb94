"""
Bound and property checkers

- the ordering chain gamma <= eternal <= autonomous <= n - min_degree, plus
  independence_number <= autonomous;
- the partition certificate: k cliques, each larger than k, with every vertex
  seeing at most one vertex of any other class, give autonomous number k;
- the independent-set embedding property of autonomous families and its
  corollary for independent dominating sets.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence

from ..errors import EngineInvariantError, HypothesisViolation, PartitionError
from ..graph.bitset import VertexSet, bit, from_members, iter_members, popcount
from ..graph.graph import Graph, independence_number, is_connected, min_degree
from .engine import STATUS_OK, InvariantEngine
from .kernel import covered

logger = logging.getLogger(__name__)


@dataclass
class BoundsReport:
    """Values compared by check_bounds; None marks an invariant the node cap stopped"""
    gamma: Optional[int]
    eternal: Optional[int]
    autonomous: Optional[int]
    foolproof: int
    independence: int
    violations: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict:
        return {
            "gamma": self.gamma,
            "eternal": self.eternal,
            "autonomous": self.autonomous,
            "foolproof": self.foolproof,
            "independence": self.independence,
            "holds": self.holds,
            "violations": list(self.violations),
        }


def check_bounds(engine: InvariantEngine, fatal: bool = True) -> BoundsReport:
    """
    Compare the computed invariants against the proven inequalities

    A violation is an engine bug: with fatal=True it raises EngineInvariantError.
    """
    values = {}
    for invariant in ("gamma", "eternal", "autonomous"):
        report = engine.compute(invariant)
        values[invariant] = report.value if report.status == STATUS_OK else None

    g = engine.graph
    report = BoundsReport(
        gamma=values["gamma"],
        eternal=values["eternal"],
        autonomous=values["autonomous"],
        foolproof=g.n - min_degree(g),
        independence=independence_number(g),
    )

    chain = [
        ("gamma", report.gamma),
        ("eternal", report.eternal),
        ("autonomous", report.autonomous),
        ("n - min_degree", report.foolproof),
    ]
    known = [(name, value) for name, value in chain if value is not None]
    for (lower_name, lower), (upper_name, upper) in zip(known, known[1:]):
        if lower > upper:
            report.violations.append(f"{lower_name} = {lower} > {upper_name} = {upper}")
    if report.autonomous is not None and report.independence > report.autonomous:
        report.violations.append(
            f"independence number {report.independence} > autonomous = {report.autonomous}"
        )

    if report.violations:
        logger.error(f"Bound violations on {engine.spec}: {report.violations}")
        if fatal:
            raise EngineInvariantError("; ".join(report.violations))
    return report


def partition_bound(g: Graph, partition: Sequence[VertexSet]) -> Optional[int]:
    """
    k when the partition certifies autonomous number k, else None

    Hypotheses checked: k classes, each inducing a clique of more than k
    vertices, and every vertex adjacent to at most one vertex of each other
    class.
    """
    seen = 0
    for cls in partition:
        g.check_set(cls)
        if not cls:
            raise PartitionError("partition classes must be nonempty")
        if cls & seen:
            raise PartitionError("partition classes overlap")
        seen |= cls
    if seen != g.full:
        raise PartitionError("partition classes do not cover every vertex")

    k = len(partition)
    for cls in partition:
        if popcount(cls) <= k:
            return None
        for v in iter_members(cls):
            if g.closed[v] & cls != cls:
                return None
    for i, cls in enumerate(partition):
        for v in iter_members(cls):
            for j, other in enumerate(partition):
                if i != j and popcount(g.adj[v] & other) > 1:
                    return None
    return k


def independent_sets(g: Graph, max_size: int) -> Iterator[VertexSet]:
    """Every nonempty independent set with at most max_size vertices"""

    def extend(current: VertexSet, candidates: VertexSet, size: int) -> Iterator[VertexSet]:
        for v in iter_members(candidates):
            grown = current | bit(v)
            yield grown
            if size + 1 < max_size:
                higher = candidates & ~((bit(v) << 1) - 1)
                yield from extend(grown, higher & ~g.adj[v], size + 1)

    if max_size >= 1:
        yield from extend(0, g.full, 0)


def independent_embedding_holds(engine: InvariantEngine, k: int) -> bool:
    """
    Every all-secure component at size k contains, for each independent set of
    at most k vertices, a member including it. Vacuously true without one.
    """
    mg = engine.move_graph(k)
    for cid in mg.secure_components():
        family = [mg.nodes[i] for i in mg.members(cid)]
        for independent in independent_sets(engine.graph, k):
            if not any(s & independent == independent for s in family):
                logger.warning(f"Independent set {independent:#x} embeds in no member of component {cid}")
                return False
    return True


def superset_of_independent_holds(engine: InvariantEngine, k: int, independent: VertexSet) -> bool:
    """
    For an independent dominating set whose complement induces a connected
    subgraph (in a connected graph), every k-superset lies in each all-secure
    component at size k.

    Raises HypothesisViolation when the hypotheses fail.
    """
    g = engine.graph
    g.check_set(independent)
    if not is_connected(g):
        raise HypothesisViolation("the graph is not connected")
    for v in iter_members(independent):
        if g.adj[v] & independent:
            raise HypothesisViolation("the set is not independent")
    if covered(g, independent) != g.full:
        raise HypothesisViolation("the set is not dominating")
    if popcount(independent) > k:
        raise HypothesisViolation(f"the set has more than {k} vertices")
    if not _induces_connected(g, g.full & ~independent):
        raise HypothesisViolation("the complement does not induce a connected subgraph")

    mg = engine.move_graph(k)
    rest = [v for v in range(g.n) if not (independent >> v) & 1]
    extra = k - popcount(independent)
    supersets = [independent | from_members(c) for c in combinations(rest, extra)]
    for cid in mg.secure_components():
        for s in supersets:
            if mg.component[mg.node_id(s)] != cid:
                return False
    return True


def _induces_connected(g: Graph, vertices: VertexSet) -> bool:
    if not vertices:
        return True
    start = vertices & -vertices
    seen = start
    frontier = start
    while frontier:
        grown = 0
        for v in iter_members(frontier):
            grown |= g.adj[v]
        frontier = grown & vertices & ~seen
        seen |= frontier
    return seen == vertices
