"""
Built-in domlab commands

Each command wraps one library entry point: compute, profile, refute, realize,
simulate, verify-paper, export-dot and schema.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from rich.table import Table

from ..cache import ResultRecord
from ..core.catalog import ExpectedTriple, check_entry, realize_spec, verify_paper
from ..core.engine import INVARIANTS, STATUS_OK, InvariantEngine
from ..core.kernel import Move
from ..core.simulator import ProtocolConfig, exhaustive_check, load_script, monte_carlo, simulate
from ..core.trajectory import Step, Trajectory
from ..errors import NoRefutationError, ResourceCapExceeded
from ..graph.bitset import format_set, from_members, members
from ..graph.graph import Graph, canonical_hash, min_degree
from ..graph.io import to_dot
from ..graph.spec import generate
from ..utils.config import ADVERSARIES
from .base_command import (
    EXIT_CAP,
    EXIT_MISMATCH,
    BaseCommand,
    CommandContext,
    CommandMetadata,
    CommandParameter,
    CommandRegistry,
    CommandResult,
    ParameterType,
)

logger = logging.getLogger(__name__)

SPEC_PARAMETER = CommandParameter(
    "spec", ParameterType.STRING, "Graph constructor expression, e.g. path:7 or cart(complete:2,complete:3)",
    positional=True,
)


def compute_record(context: CommandContext, g: Graph, invariant: str) -> ResultRecord:
    """One invariant as a ResultRecord, served from the cache when possible"""
    graph_hash = canonical_hash(g)
    if context.cache is not None:
        cached = context.cache.get(graph_hash, g.name, invariant)
        if cached is not None:
            return cached

    report = InvariantEngine(g, context.node_cap, spec=g.name).compute(invariant)
    certificate = report.certificate
    record = ResultRecord(
        spec=g.name,
        graph_hash=graph_hash,
        invariant=invariant,
        k=report.cap_k,
        value=report.value,
        status=report.status,
        certificate=certificate.to_dict(g.labels) if certificate else None,
        certificate_digest=certificate.digest() if certificate else None,
        wall_time=round(report.elapsed, 6),
    )
    if context.cache is not None:
        context.cache.put(record)
    return record


def describe_certificate(certificate: Optional[Dict[str, Any]]) -> str:
    if not certificate:
        return "-"
    kind = certificate["kind"]
    if kind == "witness":
        return f"dominating set {certificate['witness_labels']}"
    if kind == "family":
        family = certificate["family"]
        return (
            f"all-secure component of {family['size']} sets containing "
            f"{family['representative_labels']}"
        )
    if kind == "fixed_point":
        return f"{certificate['fixed_point_size']} sets survive the eternal deletion"
    return certificate.get("formula", kind)


def trajectory_table(title: str, trajectory: Trajectory, labels) -> Table:
    table = Table(title=title)
    table.add_column("Round", justify="right")
    table.add_column("Configuration")
    table.add_column("Attack")
    table.add_column("Response")
    table.add_column("Verdict")
    for step in trajectory.steps:
        response = (
            f"{labels[step.move.source]} -> {labels[step.move.target]}" if step.move is not None else "none"
        )
        table.add_row(
            str(step.round),
            format_set(step.configuration, labels),
            labels[step.attack],
            response,
            step.verdict,
        )
    return table


class ComputeCommand(BaseCommand):
    def get_metadata(self) -> CommandMetadata:
        return CommandMetadata(
            name="compute",
            description="Compute one invariant exactly, with a certificate",
            parameters=[
                SPEC_PARAMETER,
                CommandParameter(
                    "invariant", ParameterType.STRING, "Invariant to compute",
                    choices=list(INVARIANTS), positional=True,
                ),
            ],
            examples=["domlab compute path:7 autonomous", "domlab compute E:3,3 eternal"],
        )

    def execute(self, context: CommandContext, spec: str, invariant: str) -> CommandResult:
        g = generate(spec)
        record = compute_record(context, g, invariant)
        data = record.model_dump(mode="json")
        if record.status != STATUS_OK:
            return CommandResult(
                success=False,
                message=f"{invariant}({g.name}) unknown: node cap {context.node_cap} exceeded at k={record.k}",
                data=data,
                exit_code=EXIT_CAP,
            )
        return CommandResult(success=True, message=f"{invariant}({g.name}) = {record.value}", data=data)

    def render(self, result: CommandResult, console) -> None:
        console.print(result.message)
        if result.data and result.data.get("certificate"):
            console.print(f"  certificate: {describe_certificate(result.data['certificate'])}")


class ProfileCommand(BaseCommand):
    def get_metadata(self) -> CommandMetadata:
        return CommandMetadata(
            name="profile",
            description="Autonomous feasibility per size from gamma to kmax",
            parameters=[
                SPEC_PARAMETER,
                CommandParameter(
                    "kmax", ParameterType.INTEGER, "Largest size (default n - min_degree)",
                    required=False, min_value=1,
                ),
            ],
            examples=["domlab profile house9 --kmax 4"],
        )

    def execute(self, context: CommandContext, spec: str, kmax: Optional[int] = None) -> CommandResult:
        g = generate(spec)
        k_max = min(kmax if kmax is not None else g.n - min_degree(g), g.n)
        graph_hash = canonical_hash(g)
        engine = InvariantEngine(g, context.node_cap, spec=g.name)
        gamma: Optional[int] = None
        try:
            gamma = engine.gamma()[0]
            low = gamma
        except ResourceCapExceeded as e:
            low = e.k
        sizes = range(low, k_max + 1)

        cached: Dict[int, ResultRecord] = {}
        if context.cache is not None:
            for k in sizes:
                record = context.cache.get(graph_hash, g.name, "feasible", k)
                if record is not None:
                    cached[k] = record
        profile = engine.feasibility_profile(k_max) if len(cached) < len(sizes) else None

        rows: List[Dict[str, Any]] = []
        for k in sizes:
            if k in cached:
                rows.append({"k": k, "feasible": cached[k].value, **(cached[k].certificate or {})})
                continue
            row = profile.rows[k]  # type: ignore[union-attr]
            counts = {
                "node_count": row.node_count,
                "component_count": row.component_count,
                "secure_component_count": row.secure_component_count,
            }
            rows.append({"k": k, "feasible": row.feasible, **counts})
            if row.feasible is not None and context.cache is not None:
                context.cache.put(ResultRecord(
                    spec=g.name, graph_hash=graph_hash, invariant="feasible", k=k,
                    value=row.feasible, certificate=counts,
                ))

        data = {"spec": g.name, "gamma": gamma, "rows": rows}
        feasible = [row["k"] for row in rows if row["feasible"]]
        message = f"{g.name}: feasible at {feasible}" if feasible else f"{g.name}: no feasible size up to {k_max}"
        if any(row["feasible"] is None for row in rows):
            return CommandResult(success=False, message=message + " (some sizes unknown)", data=data,
                                 exit_code=EXIT_CAP)
        return CommandResult(success=True, message=message, data=data)

    def render(self, result: CommandResult, console) -> None:
        table = Table(title=f"Autonomous feasibility: {result.data['spec']}")
        for column in ("k", "feasible", "sets", "components", "all-secure"):
            table.add_column(column, justify="right")
        for row in result.data["rows"]:
            verdict = {True: "yes", False: "[red]no[/red]", None: "unknown"}[row["feasible"]]
            table.add_row(
                str(row["k"]), verdict,
                *(str(row.get(key, "-")) for key in ("node_count", "component_count", "secure_component_count")),
            )
        console.print(table)
        console.print(result.message)


class RefuteCommand(BaseCommand):
    def get_metadata(self) -> CommandMetadata:
        return CommandMetadata(
            name="refute",
            description="Shortest run of legal moves from START to a set that is not secure dominating",
            parameters=[
                SPEC_PARAMETER,
                CommandParameter("k", ParameterType.INTEGER, "Number of guards", min_value=1, positional=True),
                CommandParameter(
                    "start", ParameterType.STRING, "Starting set, comma-separated labels or ids", positional=True,
                ),
            ],
            examples=["domlab refute house9 3 b_1,a_3,a_4"],
        )

    def execute(self, context: CommandContext, spec: str, k: int, start: str) -> CommandResult:
        g = generate(spec)
        s = g.vertex_set(start)
        try:
            trajectory = InvariantEngine(g, context.node_cap, spec=g.name).refute(k, s)
        except NoRefutationError as e:
            return CommandResult(success=False, message=str(e), error=str(e), exit_code=EXIT_MISMATCH,
                                 data={"spec": g.name, "k": k, "start": members(s), "trajectory": None})
        last = trajectory.steps[-1]
        return CommandResult(
            success=True,
            message=(
                f"{format_set(last.configuration, g.labels)} is not secure: "
                f"attack {g.label(last.attack)} has no legal response"
            ),
            data={"spec": g.name, "k": k, "start": members(s), "labels": list(g.labels),
                  "trajectory": trajectory.to_dict()},
        )

    def render(self, result: CommandResult, console) -> None:
        data = result.data or {}
        if data.get("trajectory"):
            labels = data["labels"]
            trajectory = _trajectory_from_dict(data["trajectory"])
            console.print(trajectory_table(f"Refutation on {data['spec']}", trajectory, labels))
        console.print(result.message)


def _trajectory_from_dict(data: Dict[str, Any]) -> Trajectory:
    steps = [
        Step(
            step["round"],
            from_members(step["configuration"]),
            step["attack"],
            Move(*step["move"]) if step["move"] is not None else None,
            step["verdict"],
        )
        for step in data["steps"]
    ]
    return Trajectory(steps, tuple(data["failing_attacks"]))


class RealizeCommand(BaseCommand):
    def get_metadata(self) -> CommandMetadata:
        return CommandMetadata(
            name="realize",
            description="Build a graph with domination, eternal and autonomous numbers (A, B, C) and verify it",
            parameters=[
                CommandParameter(name, ParameterType.INTEGER, f"Target {what}", positional=True)
                for name, what in (("a", "domination number"), ("b", "eternal number"), ("c", "autonomous number"))
            ],
            examples=["domlab realize 2 3 5"],
        )

    def execute(self, context: CommandContext, a: int, b: int, c: int) -> CommandResult:
        spec, label = realize_spec(a, b, c)
        result = check_entry(ExpectedTriple(spec, a, b, c, label, "realize"), context.node_cap)
        data = {"a": a, "b": b, "c": c, "spec": spec, "case": label, "check": result.to_dict()}
        if result.status != STATUS_OK:
            return CommandResult(success=False, message=f"{spec}: verification hit the node cap", data=data,
                                 exit_code=EXIT_CAP)
        if not result.passed:
            return CommandResult(success=False, message=f"{spec}: {'; '.join(result.mismatches)}", data=data,
                                 exit_code=EXIT_MISMATCH)
        return CommandResult(success=True, message=f"{spec} realizes ({a},{b},{c}) [{label}], verified", data=data)


class SimulateCommand(BaseCommand):
    def get_metadata(self) -> CommandMetadata:
        return CommandMetadata(
            name="simulate",
            description="Run the guard protocol against an adversary",
            parameters=[
                SPEC_PARAMETER,
                CommandParameter(
                    "start", ParameterType.STRING, "Starting dominating set, comma-separated labels or ids",
                    positional=True,
                ),
                CommandParameter("seed", ParameterType.INTEGER, "Random seed", required=False, min_value=0),
                CommandParameter("rounds", ParameterType.INTEGER, "Round horizon", required=False, min_value=0),
                CommandParameter("trials", ParameterType.INTEGER, "Independent runs", required=False, min_value=0),
                CommandParameter(
                    "adversary", ParameterType.STRING,
                    f"One of {', '.join(ADVERSARIES)} or scripted:FILE", required=False,
                ),
                CommandParameter(
                    "export", ParameterType.PATH, "Write the (example) trajectory as JSON lines", required=False,
                ),
                CommandParameter(
                    "exhaustive", ParameterType.BOOLEAN,
                    "Explore every attack sequence and response instead of sampling", required=False,
                    default=False,
                ),
            ],
            examples=[
                "domlab simulate house9 b_1,a_3,a_4 --adversary oracle --trials 100",
                "domlab simulate path:4 a_2,a_4 --adversary scripted:attacks.txt",
            ],
        )

    def execute(
        self,
        context: CommandContext,
        spec: str,
        start: str,
        seed: Optional[int] = None,
        rounds: Optional[int] = None,
        trials: Optional[int] = None,
        adversary: Optional[str] = None,
        export: Optional[str] = None,
        exhaustive: bool = False,
    ) -> CommandResult:
        g = generate(spec)
        s = g.vertex_set(start)
        labels = list(g.labels)

        if exhaustive:
            result = exhaustive_check(g, s)
            data = {"spec": g.name, "start": members(s), "labels": labels, "reachable": result.reachable,
                    "trajectory": result.failure.to_dict() if result.failure else None}
            if result.failure is not None:
                self._export(export, result.failure)
                return CommandResult(success=True, data=data, message=(
                    f"an attack sequence defeats {format_set(s, g.labels)} "
                    f"({result.reachable} configurations explored)"
                ))
            return CommandResult(success=True, data=data, message=(
                f"no attack sequence defeats {format_set(s, g.labels)} "
                f"({result.reachable} reachable configurations)"
            ))

        defaults = context.config.get("simulation", {})
        cfg = self._protocol(
            g,
            seed if seed is not None else defaults.get("seed", 0),
            rounds if rounds is not None else defaults.get("rounds", 1000),
            adversary or defaults.get("adversary", "uniform"),
        )
        trials = trials if trials is not None else defaults.get("trials", 1)

        if trials <= 1:
            outcome = simulate(g, s, cfg)
            self._export(export, outcome.trajectory)
            data = {"spec": g.name, "start": members(s), "labels": labels, "adversary": cfg.adversary,
                    "seed": cfg.seed, **outcome.to_dict()}
            if outcome.failed:
                message = f"FAILED at round {outcome.failed_round}: attack {g.label(outcome.failed_attack)}"
            else:
                message = f"survived {outcome.rounds} rounds"
            return CommandResult(success=True, message=message, data=data)

        stats = monte_carlo(g, s, cfg, trials, context.threads, context.node_cap)
        if stats.example is not None:
            self._export(export, stats.example.trajectory)
        data = {"spec": g.name, "start": members(s), "labels": labels, "adversary": cfg.adversary,
                "seed": cfg.seed, **stats.to_dict()}
        message = f"{stats.failures} of {trials} runs failed"
        if stats.mean_failure_round is not None:
            message += f" (mean failure round {stats.mean_failure_round:.1f})"
        return CommandResult(success=True, message=message, data=data)

    @staticmethod
    def _protocol(g: Graph, seed: int, rounds: int, adversary: str) -> ProtocolConfig:
        if adversary.startswith("scripted:"):
            script = load_script(g, adversary.split(":", 1)[1])
            return ProtocolConfig(seed, rounds, "scripted", script)
        if adversary not in ADVERSARIES:
            raise ValueError(f"unknown adversary {adversary!r}; expected one of {ADVERSARIES} or scripted:FILE")
        return ProtocolConfig(seed, rounds, adversary)

    def _export(self, path: Optional[str], trajectory: Trajectory):
        if path:
            Path(path).write_text(trajectory.to_jsonl(), encoding="utf-8")
            self.logger.info(f"Trajectory written to {path}")

    def render(self, result: CommandResult, console) -> None:
        data = result.data or {}
        trajectory = data.get("trajectory") or (data.get("example") or {}).get("trajectory")
        if trajectory and trajectory["steps"] and len(trajectory["steps"]) <= 50:
            console.print(trajectory_table(f"Guard protocol on {data['spec']}",
                                           _trajectory_from_dict(trajectory), data["labels"]))
        console.print(result.message)


class VerifyPaperCommand(BaseCommand):
    def get_metadata(self) -> CommandMetadata:
        return CommandMetadata(
            name="verify-paper",
            description="Recompute the catalog of known values and compare",
            parameters=[
                CommandParameter(
                    "scope", ParameterType.STRING,
                    "default, or comma-separated GROUP[:MAX_ORDER] (paths, cycles, products, ladders, "
                    "counterexamples, families, realize)",
                    required=False, default="default",
                ),
            ],
            examples=["domlab verify-paper --scope default", "domlab verify-paper --scope paths:8,cycles:8"],
        )

    def execute(self, context: CommandContext, scope: str = "default") -> CommandResult:
        report = verify_paper(scope, threads=context.threads, node_cap=context.node_cap)
        data = report.to_dict()
        total = len(report.results)
        message = f"{data['passed']} of {total} passed, {data['failed']} failed, {data['unknown']} unknown"
        if not report.all_passed:
            return CommandResult(success=False, message=message, data=data, exit_code=EXIT_MISMATCH)
        return CommandResult(success=True, message=message, data=data)

    def render(self, result: CommandResult, console) -> None:
        table = Table(title="Catalog verification")
        table.add_column("Spec")
        table.add_column("Group")
        table.add_column("Expected")
        table.add_column("Computed")
        table.add_column("Result")
        table.add_column("Time", justify="right")
        for entry in result.data["entries"]:
            if entry["status"] != STATUS_OK:
                verdict = "[yellow]unknown[/yellow]"
            else:
                verdict = "[green]pass[/green]" if entry["passed"] else "[red]FAIL[/red]"
            table.add_row(
                entry["spec"], entry["group"], json.dumps(entry["expected"]), json.dumps(entry["computed"]),
                verdict, f"{entry['elapsed']:.2f}s",
            )
        console.print(table)
        console.print(result.message)


class ExportDotCommand(BaseCommand):
    def get_metadata(self) -> CommandMetadata:
        return CommandMetadata(
            name="export-dot",
            description="Print the graph in Graphviz DOT format",
            parameters=[
                SPEC_PARAMETER,
                CommandParameter(
                    "highlight", ParameterType.STRING, "Vertices to fill, comma-separated labels or ids",
                    required=False,
                ),
            ],
            examples=["domlab export-dot house9 --highlight b_1,a_3,a_4"],
        )

    def execute(self, context: CommandContext, spec: str, highlight: Optional[str] = None) -> CommandResult:
        g = generate(spec)
        dot = to_dot(g, g.vertex_set(highlight) if highlight else 0)
        return CommandResult(success=True, message=dot, data={"spec": g.name, "dot": dot})

    def render(self, result: CommandResult, console) -> None:
        console.print(result.message, end="", markup=False, highlight=False)


class SchemaCommand(BaseCommand):
    def get_metadata(self) -> CommandMetadata:
        return CommandMetadata(name="schema", description="Print the JSON schema of result records")

    def execute(self, context: CommandContext) -> CommandResult:
        schema = ResultRecord.model_json_schema()
        return CommandResult(success=True, message=json.dumps(schema, indent=2), data=schema)

    def render(self, result: CommandResult, console) -> None:
        console.print_json(result.message)


def build_registry() -> CommandRegistry:
    registry = CommandRegistry()
    for command in (
        ComputeCommand(),
        ProfileCommand(),
        RefuteCommand(),
        RealizeCommand(),
        SimulateCommand(),
        VerifyPaperCommand(),
        ExportDotCommand(),
        SchemaCommand(),
    ):
        registry.register(command)
    return registry
