"""
Catalog of graphs with known invariant values, and the realizability constructor

catalog_expected() is the acceptance table: every entry names a graph spec and
the values the exact engine must reproduce. realize(a, b, c) builds a graph
whose (gamma, eternal, autonomous) triple is exactly (a, b, c).
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..errors import GraphSpecError, HypothesisViolation
from ..graph.graph import Graph
from ..graph.spec import generate
from ..utils.logging import get_structured_logger
from .engine import STATUS_OK, InvariantEngine
from .move_graph import DEFAULT_NODE_CAP

logger = logging.getLogger(__name__)
events = get_structured_logger(__name__)

GROUPS = ("paths", "cycles", "products", "ladders", "counterexamples", "families", "realize")


@dataclass(frozen=True)
class ExpectedTriple:
    """
    Known values for one catalog graph; None means "not asserted"

    Attributes:
        spec: Constructor expression
        gamma, eternal, autonomous: Expected invariant values
        provenance: Where the value comes from
        group: Catalog group the entry belongs to
        foolproof: Expected n - min_degree, when asserted
        feasible: Expected autonomous feasibility per size
        secdom: Expected secdom_sufficiency per size
    """
    spec: str
    gamma: Optional[int]
    eternal: Optional[int]
    autonomous: Optional[int]
    provenance: str
    group: str = "misc"
    foolproof: Optional[int] = None
    feasible: Tuple[Tuple[int, bool], ...] = ()
    secdom: Tuple[Tuple[int, bool], ...] = ()

    def expected(self) -> Dict[str, object]:
        values: Dict[str, object] = {}
        for name in ("gamma", "eternal", "autonomous", "foolproof"):
            if getattr(self, name) is not None:
                values[name] = getattr(self, name)
        for k, flag in self.feasible:
            values[f"feasible@{k}"] = flag
        for k, flag in self.secdom:
            values[f"secdom@{k}"] = flag
        return values


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _paths() -> List[ExpectedTriple]:
    entries = [
        ExpectedTriple("path:2", 1, 1, 1, "small paths", "paths", foolproof=1),
        ExpectedTriple("path:3", 1, 2, 2, "small paths", "paths", foolproof=2),
    ]
    for n in range(4, 13):
        entries.append(ExpectedTriple(
            f"path:{n}", _ceil_div(n, 3), _ceil_div(n, 2), n - 2,
            "paths: autonomous n-2, eternal ceil(n/2)", "paths", foolproof=n - 1,
        ))
    return entries


def _cycles() -> List[ExpectedTriple]:
    entries = [
        ExpectedTriple("cycle:3", 1, 1, 1, "small cycles", "cycles", foolproof=1),
        ExpectedTriple("cycle:4", 2, 2, 2, "small cycles", "cycles", foolproof=2),
        ExpectedTriple("cycle:5", 2, 3, 3, "small cycles", "cycles", foolproof=3),
    ]
    for n in range(6, 13):
        entries.append(ExpectedTriple(
            f"cycle:{n}", _ceil_div(n, 3), _ceil_div(n, 2), n - 3,
            "cycles: autonomous n-3, eternal ceil(n/2)", "cycles", foolproof=n - 2,
        ))
    return entries


def _products() -> List[ExpectedTriple]:
    entries = []
    for p in range(2, 5):
        for q in range(p, 5):
            entries.append(ExpectedTriple(
                f"cart(complete:{p},complete:{q})", p, p, p,
                "clique products: all three equal p", "products", foolproof=p * q - p - q + 2,
            ))
    return entries


def _ladders() -> List[ExpectedTriple]:
    entries = []
    for n in range(2, 8):
        entries.append(ExpectedTriple(
            f"ladder:{n}", (n + 2) // 2, n, max(n, 2 * n - 3),
            "ladders: autonomous 2n-3 (n >= 3), eternal n", "ladders", foolproof=2 * n - 2,
        ))
    return entries


def _counterexamples() -> List[ExpectedTriple]:
    return [
        ExpectedTriple("house", 2, 2, 2, "two triangles joined by a matching", "counterexamples",
                       foolproof=3),
        ExpectedTriple("house+diag", 2, 2, 3, "adding an edge raises the autonomous number",
                       "counterexamples", foolproof=3),
        ExpectedTriple("c5k3", 3, 4, 4, "disjoint union: autonomous numbers add", "counterexamples",
                       foolproof=6),
        ExpectedTriple("c5k3+bridge", 3, None, 6, "a bridge raises the autonomous number to n - min_degree",
                       "counterexamples", foolproof=6),
        ExpectedTriple("paw2", 1, 3, 3, "all dominating 3-sets secure is not necessary", "counterexamples",
                       foolproof=4, secdom=((3, False),)),
        ExpectedTriple("house9", 2, 2, 2, "feasible at 2 but not at 3", "counterexamples",
                       foolproof=5, feasible=((2, True), (3, False))),
        ExpectedTriple("intro6", 1, 3, 4, "complement 3-colourable yet autonomous number 4",
                       "counterexamples", foolproof=4),
    ]


def _families() -> List[ExpectedTriple]:
    entries = []
    for n in (2, 3):
        entries.append(ExpectedTriple(f"A:{n}", 1, 2, n + 2, "A_n: (1, 2, n+2)", "families"))
    for m in range(0, 3):
        for n in range(0, 3):
            # pendant pairs add 2m to the autonomous number, not m
            autonomous = n + 3 if m == 0 else 2 * m + n + 3
            entries.append(ExpectedTriple(
                f"B:{m},{n}", m + 2, m + 2, autonomous, "B_{m,n}: (m+2, m+2, n+3 or 2m+n+3)", "families"))
    for m in range(2, 5):
        for n in range(1, 4):
            entries.append(ExpectedTriple(
                f"C:{m},{n}", 1, m + 1, m + n, "C_{m,n}: (1, m+1, m+n)", "families"))
    for m in range(1, 4):
        for n in range(1, 4):
            entries.append(ExpectedTriple(
                f"D:{m},{n}", m + 1, m + 2, m + n + 1, "D_{m,n}: (m+1, m+2, m+n+1)", "families"))
    for m in range(1, 4):
        for n in range(1, 4):
            entries.append(ExpectedTriple(
                f"E:{m},{n}", 2, n + 3, m + n + 3, "E_{m,n}: (2, n+3, m+n+3)", "families"))
    for l in range(1, 4):
        for m in range(1, 3):
            for n in range(1, 3):
                # with l = 1 the leaves plus one clique vertex form an all-secure family
                autonomous = l + m + n if l > 1 else m + 2
                entries.append(ExpectedTriple(
                    f"F:{l},{m},{n}", l, l + m + 1, autonomous,
                    "F_{l,m,n}: (l, l+m+1, l+m+n; m+2 when l = 1)", "families"))
    return entries


@dataclass(frozen=True)
class RealizabilityCase:
    """One branch of the realizability dispatch"""
    label: str
    applies: Callable[[int, int, int], bool]
    spec: Callable[[int, int, int], str]


def _with_k2_copies(count: int, spec: str) -> str:
    """spec plus count disjoint copies of K_2, each adding (1, 1, 1)"""
    for _ in range(count):
        spec = f"disjoint(complete:2,{spec})"
    return spec


REALIZABILITY_CASES: Tuple[RealizabilityCase, ...] = (
    RealizabilityCase("c = 1", lambda a, b, c: c == 1, lambda a, b, c: "complete:3"),
    RealizabilityCase("a = 1, b = 2, c = 2", lambda a, b, c: a == 1 and b == 2 and c == 2,
                      lambda a, b, c: "path:3"),
    RealizabilityCase("a = 1, b = 2, c = 3", lambda a, b, c: a == 1 and b == 2 and c == 3,
                      lambda a, b, c: "cone6"),
    RealizabilityCase("a = 1, b = 2, c > 3", lambda a, b, c: a == 1 and b == 2,
                      lambda a, b, c: f"A:{c - 2}"),
    RealizabilityCase("a = 1, b > 2", lambda a, b, c: a == 1 and b > 2,
                      lambda a, b, c: f"C:{b - 1},{c - b + 1}"),
    RealizabilityCase("a = 2, b = 2, c = 2", lambda a, b, c: a == 2 and b == 2 and c == 2,
                      lambda a, b, c: "path:4"),
    RealizabilityCase("a = 2, b = 2, c > 2", lambda a, b, c: a == 2 and b == 2,
                      lambda a, b, c: f"B:0,{c - 3}"),
    RealizabilityCase("a = 2, b = 3, c = 3", lambda a, b, c: a == 2 and b == 3 and c == 3,
                      lambda a, b, c: "kbip:2,3"),
    RealizabilityCase("a = 2, b = 3, c > 3", lambda a, b, c: a == 2 and b == 3,
                      lambda a, b, c: f"D:1,{c - 2}"),
    RealizabilityCase("a = 2, b > 3, b = c", lambda a, b, c: a == 2 and b > 3 and b == c,
                      lambda a, b, c: f"kbip:2,{b}"),
    RealizabilityCase("a = 2, b > 3, b < c", lambda a, b, c: a == 2 and b > 3,
                      lambda a, b, c: f"E:{c - b},{b - 3}"),
    RealizabilityCase("a >= 3, b = a = c", lambda a, b, c: a >= 3 and b == a and c == a,
                      lambda a, b, c: _with_k2_copies(a - 1, "complete:2")),
    RealizabilityCase("a >= 3, b = a, c >= 2a - 1", lambda a, b, c: a >= 3 and b == a and c >= 2 * a - 1,
                      lambda a, b, c: f"B:{a - 2},{c - 2 * a + 1}"),
    RealizabilityCase("a >= 3, b = a < c < 2a - 1", lambda a, b, c: a >= 3 and b == a,
                      lambda a, b, c: _with_k2_copies(a - 2, f"B:0,{c - a - 1}")),
    RealizabilityCase("a >= 3, b = a + 1", lambda a, b, c: a >= 3 and b == a + 1,
                      lambda a, b, c: f"D:{a - 1},{c - a}"),
    RealizabilityCase("a >= 3, b >= a + 2", lambda a, b, c: a >= 3 and b >= a + 2,
                      lambda a, b, c: f"F:{a},{b - a - 1},{c - b + 1}"),
)


def realize_spec(a: int, b: int, c: int) -> Tuple[str, str]:
    """Spec text and case label of a graph with triple (a, b, c)"""
    if min(a, b, c) < 1:
        raise HypothesisViolation(f"({a},{b},{c}): values must be at least 1")
    if not a <= b <= c:
        raise HypothesisViolation(f"({a},{b},{c}): need a <= b <= c")
    if c > 1 and b == 1:
        raise HypothesisViolation(
            f"({a},{b},{c}): eternal number 1 forces a complete graph, whose autonomous number is 1"
        )
    for case in REALIZABILITY_CASES:
        if case.applies(a, b, c):
            return case.spec(a, b, c), case.label
    raise HypothesisViolation(f"({a},{b},{c}): no construction applies")


def realize(a: int, b: int, c: int) -> Graph:
    spec, _ = realize_spec(a, b, c)
    return generate(spec)


def _realizations(max_c: int) -> List[ExpectedTriple]:
    entries = []
    for c in range(1, max_c + 1):
        for b in range(1, c + 1):
            for a in range(1, b + 1):
                if c > 1 and b == 1:
                    continue
                spec, label = realize_spec(a, b, c)
                entries.append(ExpectedTriple(spec, a, b, c, f"realize({a},{b},{c}): {label}", "realize"))
    return entries


_BUILDERS: Dict[str, Callable[[], List[ExpectedTriple]]] = {
    "paths": _paths,
    "cycles": _cycles,
    "products": _products,
    "ladders": _ladders,
    "counterexamples": _counterexamples,
    "families": _families,
    "realize": lambda: _realizations(6),
}


def parse_scope(scope: str) -> List[Tuple[str, Optional[int]]]:
    """
    "default" or a comma-separated list of GROUP or GROUP:MAX_ORDER

    For the realize group the bound is the largest c instead of an order.
    """
    if scope.strip() in ("", "default", "all"):
        return [(group, None) for group in GROUPS]
    parts = []
    for item in scope.split(","):
        name, _, bound = item.strip().partition(":")
        if name not in GROUPS:
            raise GraphSpecError(f"unknown catalog group {name!r}; expected one of {GROUPS}", scope)
        if bound and not bound.isdigit():
            raise GraphSpecError(f"bound for {name} must be a number, got {bound!r}", scope)
        parts.append((name, int(bound) if bound else None))
    return parts


def catalog_expected(scope: str = "default") -> List[ExpectedTriple]:
    entries: List[ExpectedTriple] = []
    for group, bound in parse_scope(scope):
        if group == "realize":
            entries.extend(_realizations(bound or 6))
            continue
        for entry in _BUILDERS[group]():
            if bound is None or generate(entry.spec).n <= bound:
                entries.append(entry)
    return entries


@dataclass
class EntryResult:
    entry: ExpectedTriple
    computed: Dict[str, object]
    status: str
    elapsed: float

    @property
    def passed(self) -> bool:
        expected = self.entry.expected()
        return self.status == STATUS_OK and all(self.computed.get(key) == value for key, value in expected.items())

    @property
    def mismatches(self) -> List[str]:
        return [
            f"{key}: expected {value}, got {self.computed.get(key)}"
            for key, value in self.entry.expected().items()
            if self.computed.get(key) is not None and self.computed.get(key) != value
        ]

    def to_dict(self) -> Dict:
        return {
            "spec": self.entry.spec,
            "group": self.entry.group,
            "provenance": self.entry.provenance,
            "expected": self.entry.expected(),
            "computed": self.computed,
            "status": self.status,
            "passed": self.passed,
            "elapsed": round(self.elapsed, 3),
        }


@dataclass
class PaperReport:
    results: List[EntryResult] = field(default_factory=list)

    @property
    def failures(self) -> List[EntryResult]:
        return [r for r in self.results if r.status == STATUS_OK and not r.passed]

    @property
    def unknown(self) -> List[EntryResult]:
        return [r for r in self.results if r.status != STATUS_OK]

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict:
        return {
            "entries": [r.to_dict() for r in self.results],
            "passed": sum(r.passed for r in self.results),
            "failed": len(self.failures),
            "unknown": len(self.unknown),
        }


def check_entry(entry: ExpectedTriple, node_cap: Optional[int] = DEFAULT_NODE_CAP) -> EntryResult:
    """Compute exactly what the entry asserts"""
    start = time.perf_counter()
    engine = InvariantEngine(generate(entry.spec), node_cap)
    computed: Dict[str, object] = {}
    status = STATUS_OK
    for name in ("gamma", "eternal", "autonomous", "foolproof"):
        if getattr(entry, name) is None:
            continue
        report = engine.compute(name)
        if report.status != STATUS_OK:
            status = report.status
            continue
        computed[name] = report.value
    for k, _ in entry.feasible:
        computed[f"feasible@{k}"] = engine.autonomous_feasible(k)[0]
    for k, _ in entry.secdom:
        computed[f"secdom@{k}"] = engine.secdom_sufficiency(k)
    result = EntryResult(entry, computed, status, time.perf_counter() - start)
    events.log_event(
        "catalog_entry",
        level="INFO" if result.passed or status != STATUS_OK else "WARNING",
        spec=entry.spec,
        status=status,
        passed=result.passed,
    )
    return result


def verify_paper(
    scope: str = "default",
    entries: Optional[Sequence[ExpectedTriple]] = None,
    threads: int = 1,
    node_cap: Optional[int] = DEFAULT_NODE_CAP,
) -> PaperReport:
    """
    Run the engine over the catalog (or the given entries) and compare

    Entries fan out across worker processes when threads > 1; results keep the
    catalog order either way.
    """
    todo = list(entries) if entries is not None else catalog_expected(scope)
    if threads > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(check_entry, todo, [node_cap] * len(todo)))
    else:
        results = [check_entry(entry, node_cap) for entry in todo]
    report = PaperReport(results)
    logger.info(
        f"Catalog check: {len(results)} entries, {len(report.failures)} failed, {len(report.unknown)} unknown"
    )
    return report


def corrupted(entry: ExpectedTriple, **changes) -> ExpectedTriple:
    """Copy of an entry with some expected values replaced"""
    return replace(entry, **changes)
