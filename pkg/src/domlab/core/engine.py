"""
Invariants engine

Computes the domination number, eternal domination number, foolproof eternal
domination number and autonomous domination number of one graph, exactly and
with certificates. Move graphs are built once per size k and shared by every
computation on the same engine.

Results the node cap prevented are reported with status "unknown" and no
value; they are never rounded to a number.
"""

import hashlib
import json
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..errors import EngineInvariantError, NoRefutationError, ResourceCapExceeded
from ..graph.bitset import VertexSet, format_set, highest, iter_members, members
from ..graph.graph import Graph, canonical_hash, min_degree
from ..utils.logging import PerformanceLogger, get_structured_logger
from .move_graph import DEFAULT_NODE_CAP, FamilyCertificate, MoveGraph, build_move_graph
from .trajectory import FAILED, Step, Trajectory

logger = logging.getLogger(__name__)
events = get_structured_logger(__name__)

INVARIANTS = ("gamma", "eternal", "foolproof", "autonomous")

STATUS_OK = "ok"
STATUS_UNKNOWN = "unknown"


@dataclass(frozen=True)
class Certificate:
    """
    Evidence behind a reported value

    kind is one of "witness" (a set of the reported size), "family" (an
    autonomous family), "fixed_point" (surviving node count of a deletion
    fixed point) or "formula".
    """
    kind: str
    witness: Optional[VertexSet] = None
    family: Optional[FamilyCertificate] = None
    fixed_point_size: Optional[int] = None
    formula: Optional[str] = None

    def to_dict(self, labels: Optional[Tuple[str, ...]] = None) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind}
        if self.witness is not None:
            data["witness"] = members(self.witness)
            data["witness_labels"] = format_set(self.witness, labels)
        if self.family is not None:
            data["family"] = self.family.to_dict(labels)
        if self.fixed_point_size is not None:
            data["fixed_point_size"] = self.fixed_point_size
        if self.formula is not None:
            data["formula"] = self.formula
        return data

    def digest(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


@dataclass
class InvariantReport:
    """
    One computed invariant

    Attributes:
        invariant: gamma, eternal, foolproof or autonomous
        spec: Constructor expression of the graph, when known
        graph_hash: canonical_hash of the graph
        value: The invariant, or None when status is "unknown"
        status: "ok" or "unknown" (node cap exceeded)
        certificate: Evidence for the value
        elapsed: Wall time in seconds
        k_range: Sizes examined (inclusive)
        infeasible: Sizes examined that failed, ascending
        cap_k: Size at which the node cap was hit
    """
    invariant: str
    spec: Optional[str]
    graph_hash: str
    value: Optional[int]
    status: str = STATUS_OK
    certificate: Optional[Certificate] = None
    elapsed: float = 0.0
    k_range: Tuple[int, int] = (0, 0)
    infeasible: List[int] = field(default_factory=list)
    cap_k: Optional[int] = None

    def to_dict(self, labels: Optional[Tuple[str, ...]] = None) -> Dict[str, Any]:
        return {
            "invariant": self.invariant,
            "spec": self.spec,
            "graph_hash": self.graph_hash,
            "value": self.value,
            "status": self.status,
            "certificate": self.certificate.to_dict(labels) if self.certificate else None,
            "elapsed": self.elapsed,
            "k_range": list(self.k_range),
            "infeasible": list(self.infeasible),
            "cap_k": self.cap_k,
        }


@dataclass(frozen=True)
class FeasibilityRow:
    k: int
    feasible: Optional[bool]
    node_count: Optional[int]
    component_count: Optional[int]
    secure_component_count: Optional[int]

    @property
    def status(self) -> str:
        return STATUS_UNKNOWN if self.feasible is None else STATUS_OK


@dataclass
class FeasibilityProfile:
    """Per-size autonomous feasibility over [gamma, k_max]"""
    spec: Optional[str]
    rows: Dict[int, FeasibilityRow] = field(default_factory=dict)

    def feasible(self, k: int) -> Optional[bool]:
        return self.rows[k].feasible

    def to_dict(self) -> Dict[str, Any]:
        return {
            "spec": self.spec,
            "rows": [row.__dict__.copy() for row in self.rows.values()],
        }


@dataclass
class EternalKernel:
    """
    Greatest fixed point of the eternal deletion rule at one size

    Deleted nodes form the attacker's attractor: at a deleted node, attacking
    trigger[i] leaves only responses that were deleted earlier (lower rank), so
    following triggers forces a failure in at most rank[i] + 1 attacks.
    """
    alive: List[bool]
    rank: List[int]
    trigger: List[int]

    @property
    def size(self) -> int:
        return sum(self.alive)


class InvariantEngine:
    """
    Exact invariant computations for one graph

    Args:
        graph: Graph to analyse
        node_cap: Largest move graph (node count) any computation may build;
            None disables the cap
        spec: Constructor text recorded in reports (defaults to graph.name)
    """

    def __init__(self, graph: Graph, node_cap: Optional[int] = DEFAULT_NODE_CAP, spec: Optional[str] = None):
        self.graph = graph
        self.node_cap = node_cap
        self.spec = spec or graph.name
        self.graph_hash = canonical_hash(graph)
        self._move_graphs: Dict[int, MoveGraph] = {}
        self._eternal: Dict[int, EternalKernel] = {}
        self._gamma: Optional[Tuple[int, VertexSet]] = None

    def move_graph(self, k: int) -> MoveGraph:
        if k not in self._move_graphs:
            self._move_graphs[k] = build_move_graph(self.graph, k, self.node_cap)
        return self._move_graphs[k]

    def _report(self, invariant: str, **kwargs) -> InvariantReport:
        return InvariantReport(invariant=invariant, spec=self.spec, graph_hash=self.graph_hash, **kwargs)

    # domination

    def gamma(self) -> Tuple[int, VertexSet]:
        """Domination number and the lowest dominating set of that size"""
        if self._gamma is None:
            for k in range(1, self.graph.n + 1):
                mg = self.move_graph(k)
                if len(mg):
                    self._gamma = (k, mg.nodes[0])
                    break
        assert self._gamma is not None  # k = n always dominates
        return self._gamma

    def domination_number(self) -> InvariantReport:
        with PerformanceLogger(f"gamma {self.spec}") as perf:
            try:
                value, witness = self.gamma()
            except ResourceCapExceeded as e:
                return self._unknown("gamma", e, (1, e.k), [], perf)
        return self._report(
            "gamma",
            value=value,
            certificate=Certificate("witness", witness=witness),
            elapsed=perf.elapsed,
            k_range=(1, value),
            infeasible=list(range(1, value)),
        )

    def _unknown(self, invariant: str, e: ResourceCapExceeded, k_range, infeasible, perf) -> InvariantReport:
        perf.stop(f"node cap {e.cap} exceeded at k={e.k}")
        events.log_event("cap_exceeded", level="WARNING", graph=self.spec, invariant=invariant, k=e.k, cap=e.cap)
        return self._report(
            invariant,
            value=None,
            status=STATUS_UNKNOWN,
            elapsed=perf.elapsed,
            k_range=k_range,
            infeasible=infeasible,
            cap_k=e.k,
        )

    # eternal domination

    def eternal_kernel(self, k: int) -> EternalKernel:
        """
        Delete every set with an attack no surviving neighbour answers, until stable

        Worklist version: per node and target vertex v, count the live
        neighbours holding v; deleting a node only decrements its neighbours.
        """
        if k in self._eternal:
            return self._eternal[k]

        mg = self.move_graph(k)
        nodes = mg.nodes
        count = len(nodes)
        answers: List[Dict[int, int]] = []
        for i, s in enumerate(nodes):
            per_target: Dict[int, int] = {}
            for j in mg.edges[i]:
                v = highest(nodes[j] & ~s)
                per_target[v] = per_target.get(v, 0) + 1
            answers.append(per_target)

        alive = [True] * count
        rank = [-1] * count
        trigger = [-1] * count
        queue: deque = deque()
        deleted = 0

        for i in range(count):
            bad = mg.unanswerable(i)
            if bad:
                alive[i] = False
                rank[i] = deleted
                trigger[i] = highest(bad)
                deleted += 1
                queue.append(i)

        while queue:
            t = queue.popleft()
            for s in mg.edges[t]:
                if not alive[s]:
                    continue
                v = highest(nodes[t] & ~nodes[s])
                answers[s][v] -= 1
                if answers[s][v] == 0:
                    alive[s] = False
                    rank[s] = deleted
                    trigger[s] = v
                    deleted += 1
                    queue.append(s)

        kernel = EternalKernel(alive, rank, trigger)
        self._eternal[k] = kernel
        logger.debug(f"Eternal fixed point k={k}: {kernel.size} of {count} survive")
        return kernel

    def eternal_domination_number(self) -> InvariantReport:
        with PerformanceLogger(f"eternal {self.spec}") as perf:
            lo = 1
            failed: List[int] = []
            try:
                lo = self.gamma()[0]
                for k in range(lo, self.graph.n + 1):
                    size = self.eternal_kernel(k).size
                    if size:
                        break
                    failed.append(k)
            except ResourceCapExceeded as e:
                return self._unknown("eternal", e, (lo, e.k), failed, perf)
        return self._report(
            "eternal",
            value=k,
            certificate=Certificate("fixed_point", fixed_point_size=size),
            elapsed=perf.elapsed,
            k_range=(lo, k),
            infeasible=failed,
        )

    # foolproof eternal domination

    def foolproof_kernel_size(self, k: int) -> int:
        """
        Survivors under the strengthened rule: every adjacent guard may be the
        one that responds, so a set is deleted when any slide breaks domination
        or lands on a deleted set.
        """
        mg = self.move_graph(k)
        alive = list(mg.all_slides_dominating)
        queue = deque(i for i, ok in enumerate(alive) if not ok)
        while queue:
            t = queue.popleft()
            for s in mg.edges[t]:
                if alive[s]:
                    alive[s] = False
                    queue.append(s)
        return sum(alive)

    def verify_foolproof(self, k: int) -> bool:
        if k < 1 or k > self.graph.n:
            return False
        return self.foolproof_kernel_size(k) > 0

    def minimal_foolproof_k(self) -> int:
        """Least k with a nonempty strengthened fixed point; should equal n - min_degree"""
        for k in range(self.gamma()[0], self.graph.n + 1):
            if self.verify_foolproof(k):
                return k
        raise EngineInvariantError("the full vertex set failed the foolproof rule")

    def foolproof_number(self) -> InvariantReport:
        n, delta = self.graph.n, min_degree(self.graph)
        return self._report(
            "foolproof",
            value=n - delta,
            certificate=Certificate("formula", formula=f"n - min_degree = {n} - {delta}"),
            k_range=(n - delta, n - delta),
        )

    # autonomous domination

    def autonomous_feasible(self, k: int) -> Tuple[bool, Optional[FamilyCertificate]]:
        """
        Whether some move-graph component at size k is all secure

        Closure under adjacency makes every autonomous family a union of
        components; within such a union the attack condition is exactly
        secureness of every member. The certificate is the all-secure component
        with fewest nodes (lowest id on ties).
        """
        if k < 1 or k > self.graph.n:
            return False, None
        mg = self.move_graph(k)
        candidates = mg.secure_components()
        if not candidates:
            events.log_feasibility(self.spec, k, False, components=mg.component_count)
            return False, None
        best = min(candidates, key=lambda cid: (len(mg.members(cid)), cid))
        events.log_feasibility(self.spec, k, True, components=mg.component_count, secure=len(candidates))
        return True, mg.certificate(best)

    def autonomous_number(self) -> InvariantReport:
        """Ascending scan from gamma to n - min_degree; feasibility is not assumed monotone"""
        n, delta = self.graph.n, min_degree(self.graph)
        with PerformanceLogger(f"autonomous {self.spec}") as perf:
            lo = 1
            failed: List[int] = []
            try:
                lo = self.gamma()[0]
                for k in range(lo, n - delta + 1):
                    feasible, certificate = self.autonomous_feasible(k)
                    if feasible:
                        break
                    failed.append(k)
                else:
                    raise EngineInvariantError(
                        f"no autonomous family up to n - min_degree = {n - delta} on {self.spec}"
                    )
            except ResourceCapExceeded as e:
                return self._unknown("autonomous", e, (lo, e.k), failed, perf)
        return self._report(
            "autonomous",
            value=k,
            certificate=Certificate("family", family=certificate),
            elapsed=perf.elapsed,
            k_range=(lo, k),
            infeasible=failed,
        )

    def compute(self, invariant: str) -> InvariantReport:
        if invariant == "gamma":
            return self.domination_number()
        if invariant == "eternal":
            return self.eternal_domination_number()
        if invariant == "foolproof":
            return self.foolproof_number()
        if invariant == "autonomous":
            return self.autonomous_number()
        raise ValueError(f"unknown invariant {invariant!r}; expected one of {INVARIANTS}")

    def feasibility_profile(self, k_max: int) -> FeasibilityProfile:
        """
        Rows for k in [gamma, k_max]; a capped size is recorded as unknown

        When gamma itself hits the cap, rows start at the capped size: every
        smaller size was already found to have no dominating set.
        """
        profile = FeasibilityProfile(self.spec)
        k_max = min(k_max, self.graph.n)
        try:
            low = self.gamma()[0]
        except ResourceCapExceeded as e:
            low = e.k
        for k in range(low, k_max + 1):
            try:
                feasible, _ = self.autonomous_feasible(k)
            except ResourceCapExceeded:
                profile.rows[k] = FeasibilityRow(k, None, None, None, None)
                continue
            mg = self.move_graph(k)
            profile.rows[k] = FeasibilityRow(
                k, feasible, len(mg), mg.component_count, len(mg.secure_components())
            )
        return profile

    def secdom_sufficiency(self, k: int) -> bool:
        """True iff dominating sets of size k exist and all are secure"""
        if k < 1 or k > self.graph.n:
            return False
        mg = self.move_graph(k)
        return len(mg) > 0 and all(mg.secure)

    def refute(self, k: int, start: VertexSet) -> Trajectory:
        """
        Shortest run of legal moves from start to a set that is not secure

        The last step names the highest-numbered attack with no legal response;
        failing_attacks lists all of them.
        """
        mg = self.move_graph(k)
        origin = mg.node_id(start)
        if mg.is_component_secure(mg.component[origin]):
            raise NoRefutationError(
                f"every set in the component of {format_set(start, self.graph.labels)} is secure dominating"
            )

        parent = {origin: origin}
        queue = deque([origin])
        target = origin
        while queue:
            i = queue.popleft()
            if not mg.secure[i]:
                target = i
                break
            for j in mg.edges[i]:
                if j not in parent:
                    parent[j] = i
                    queue.append(j)

        path = [target]
        while path[-1] != origin:
            path.append(parent[path[-1]])
        path.reverse()

        steps = []
        for r, (i, j) in enumerate(zip(path, path[1:]), start=1):
            move = mg.move_between(i, j)
            steps.append(Step(r, mg.nodes[i], move.target, move))
        failing = tuple(iter_members(mg.unanswerable(target)))
        steps.append(Step(len(path), mg.nodes[target], failing[-1], None, FAILED))
        return Trajectory(steps, failing)


def domination_number(g: Graph, node_cap: Optional[int] = DEFAULT_NODE_CAP) -> InvariantReport:
    return InvariantEngine(g, node_cap).domination_number()


def eternal_domination_number(g: Graph, node_cap: Optional[int] = DEFAULT_NODE_CAP) -> InvariantReport:
    return InvariantEngine(g, node_cap).eternal_domination_number()


def foolproof_number(g: Graph) -> InvariantReport:
    return InvariantEngine(g).foolproof_number()


def verify_foolproof(g: Graph, k: int, node_cap: Optional[int] = DEFAULT_NODE_CAP) -> bool:
    return InvariantEngine(g, node_cap).verify_foolproof(k)


def autonomous_feasible(
    g: Graph, k: int, node_cap: Optional[int] = DEFAULT_NODE_CAP
) -> Tuple[bool, Optional[FamilyCertificate]]:
    return InvariantEngine(g, node_cap).autonomous_feasible(k)


def autonomous_number(g: Graph, node_cap: Optional[int] = DEFAULT_NODE_CAP) -> InvariantReport:
    return InvariantEngine(g, node_cap).autonomous_number()


def feasibility_profile(g: Graph, k_max: int, node_cap: Optional[int] = DEFAULT_NODE_CAP) -> FeasibilityProfile:
    return InvariantEngine(g, node_cap).feasibility_profile(k_max)


def refute(g: Graph, k: int, start: VertexSet, node_cap: Optional[int] = DEFAULT_NODE_CAP) -> Trajectory:
    return InvariantEngine(g, node_cap).refute(k, start)


def secdom_sufficiency(g: Graph, k: int, node_cap: Optional[int] = DEFAULT_NODE_CAP) -> bool:
    return InvariantEngine(g, node_cap).secdom_sufficiency(k)
