"""
Guard protocol simulator

Each round the adversary attacks an unoccupied vertex. The guards compute the
legal moves toward it; with none the run FAILS, otherwise one is picked
uniformly at random and applied.

Randomness is a pure function of (seed, trial, round): every draw is
splitmix64(splitmix64(splitmix64(seed) ^ trial) ^ (2 * round + salt)) with
salt 0 for the guards' choice and salt 1 for the uniform adversary, and an
index is the draw modulo the number of options. Runs are therefore
reproducible across processes and thread counts.
"""

import logging
import os
from abc import ABC, abstractmethod
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..errors import InvalidAttackError, OccupiedVertexError, VertexSetError
from ..graph.bitset import VertexSet, contains, format_set, iter_members, popcount
from ..graph.graph import Graph
from ..utils.logging import get_structured_logger
from .engine import InvariantEngine
from .kernel import Move, is_dominating, legal_moves
from .move_graph import DEFAULT_NODE_CAP
from .trajectory import CONTINUE, FAILED, SURVIVED, Step, Trajectory

logger = logging.getLogger(__name__)
events = get_structured_logger(__name__)

MASK64 = (1 << 64) - 1
GUARD_SALT = 0
ADVERSARY_SALT = 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def draw(seed: int, trial: int, round_: int, salt: int) -> int:
    return splitmix64(splitmix64(splitmix64(seed & MASK64) ^ trial) ^ (2 * round_ + salt))


@dataclass(frozen=True)
class ProtocolConfig:
    """
    Attributes:
        seed: 64-bit seed
        max_rounds: Round horizon
        adversary: uniform, greedy, scripted or oracle
        script: Attack list for the scripted adversary
    """
    seed: int = 0
    max_rounds: int = 1000
    adversary: str = "uniform"
    script: Tuple[int, ...] = ()


class Adversary(ABC):
    """Chooses the next attack; None ends the run"""

    @abstractmethod
    def choose(self, configuration: VertexSet, trial: int, round_: int) -> Optional[int]:
        pass


class UniformAdversary(Adversary):
    def __init__(self, graph: Graph, seed: int):
        self.graph = graph
        self.seed = seed

    def choose(self, configuration, trial, round_):
        free = list(iter_members(self.graph.full & ~configuration))
        if not free:
            return None
        return free[draw(self.seed, trial, round_, ADVERSARY_SALT) % len(free)]


class GreedyAdversary(Adversary):
    """Attacks the unoccupied vertex with fewest legal responses, lowest id on ties"""

    def __init__(self, graph: Graph):
        self.graph = graph

    def choose(self, configuration, trial, round_):
        best: Optional[Tuple[int, int]] = None
        for v in iter_members(self.graph.full & ~configuration):
            score = (len(legal_moves(self.graph, configuration, v)), v)
            if best is None or score < best:
                best = score
        return best[1] if best else None


class ScriptedAdversary(Adversary):
    """
    Replays a fixed list of attacks, one per round

    Loading rejects every attack that is invalid whatever the guards do: a
    vertex outside the graph, a first attack on the start set, and an attack
    repeating the previous round's (its responder now stands there). Whether a
    later attack lands on a guard depends on the responses drawn, so choose()
    raises OccupiedVertexError when the run reaches it.
    """

    def __init__(self, graph: Graph, attacks: Sequence[int], start: VertexSet):
        for position, v in enumerate(attacks):
            if not 0 <= v < graph.n:
                raise InvalidAttackError(f"attack #{position + 1}: no vertex {v} in a graph of order {graph.n}")
        if attacks and contains(start, attacks[0]):
            raise InvalidAttackError(f"attack #1 targets {graph.label(attacks[0])}, which holds a guard")
        for position in range(1, len(attacks)):
            if attacks[position] == attacks[position - 1]:
                raise InvalidAttackError(
                    f"attack #{position + 1} repeats {graph.label(attacks[position])}, "
                    f"which the previous response occupies"
                )
        self.graph = graph
        self.attacks = tuple(attacks)

    def choose(self, configuration, trial, round_):
        if round_ > len(self.attacks):
            return None
        v = self.attacks[round_ - 1]
        if contains(configuration, v):
            raise OccupiedVertexError(
                f"scripted attack #{round_} targets {self.graph.label(v)}, which holds a guard"
            )
        return v


class OracleAdversary(Adversary):
    """
    Worst-case attacker with full knowledge of the move graph

    Inside the attacker's attractor (sets the eternal deletion removed) it
    plays the attack that deleted the set, which forces a failure whatever the
    guards do. Elsewhere it steers toward the attractor: it prefers attacks
    whose responses all lie closer to it, then the attack with the largest
    share of closer responses, lowest vertex on ties.
    """

    def __init__(self, engine: InvariantEngine, k: int):
        self.graph = engine.graph
        self.move_graph = engine.move_graph(k)
        self.kernel = engine.eternal_kernel(k)
        self.distance = self._distances()

    def _distances(self) -> List[Optional[int]]:
        mg = self.move_graph
        distance: List[Optional[int]] = [None] * len(mg)
        queue: deque = deque()
        for i, alive in enumerate(self.kernel.alive):
            if not alive:
                distance[i] = 0
                queue.append(i)
        while queue:
            i = queue.popleft()
            for j in mg.edges[i]:
                if distance[j] is None:
                    distance[j] = distance[i] + 1  # type: ignore[operator]
                    queue.append(j)
        return distance

    def choose(self, configuration, trial, round_):
        mg = self.move_graph
        free = self.graph.full & ~configuration
        if not free:
            return None
        i = mg.node_id(configuration)
        if not self.kernel.alive[i]:
            return self.kernel.trigger[i]

        here = self.distance[i]
        if here is None:
            return next(iter_members(free))
        best: Optional[Tuple[float, int]] = None
        for v in iter_members(free):
            responses = mg.responses(i, v)
            closer = sum(1 for j in responses if (self.distance[j] or 0) < here)
            share = closer / len(responses) if responses else 1.0
            score = (-share, v)
            if best is None or score < best:
                best = score
        return best[1] if best else None


def make_adversary(
    g: Graph,
    start: VertexSet,
    cfg: ProtocolConfig,
    engine: Optional[InvariantEngine] = None,
) -> Adversary:
    if cfg.adversary == "uniform":
        return UniformAdversary(g, cfg.seed)
    if cfg.adversary == "greedy":
        return GreedyAdversary(g)
    if cfg.adversary == "scripted":
        return ScriptedAdversary(g, cfg.script, start)
    if cfg.adversary == "oracle":
        return OracleAdversary(engine or InvariantEngine(g), popcount(start))
    raise ValueError(f"unknown adversary {cfg.adversary!r}")


def load_script(g: Graph, path: Union[str, Path]) -> Tuple[int, ...]:
    """Attack file: vertex labels or ids separated by whitespace or commas; '#' comments"""
    attacks = []
    text = Path(path).read_text(encoding="utf-8")
    for number, raw in enumerate(text.splitlines(), start=1):
        for token in raw.split("#", 1)[0].replace(",", " ").split():
            try:
                attacks.append(g.vertex(token))
            except VertexSetError as e:
                raise InvalidAttackError(f"{path}:{number}: {e}") from None
    return tuple(attacks)


@dataclass
class SimOutcome:
    """
    Attributes:
        trajectory: Every round played
        verdict: SURVIVED or FAILED
        rounds: Rounds executed
        failed_round: Round of the failure, if any
        failed_attack: Vertex whose attack could not be answered
    """
    trajectory: Trajectory
    verdict: str
    rounds: int
    failed_round: Optional[int] = None
    failed_attack: Optional[int] = None

    @property
    def failed(self) -> bool:
        return self.verdict == FAILED

    def to_dict(self) -> Dict:
        return {
            "verdict": self.verdict,
            "rounds": self.rounds,
            "failed_round": self.failed_round,
            "failed_attack": self.failed_attack,
            "trajectory": self.trajectory.to_dict(),
        }


def simulate(
    g: Graph,
    start: VertexSet,
    cfg: ProtocolConfig,
    trial: int = 0,
    engine: Optional[InvariantEngine] = None,
    adversary: Optional[Adversary] = None,
) -> SimOutcome:
    """Play one run from start; deterministic in (g, start, cfg, trial)"""
    if not is_dominating(g, start):
        raise VertexSetError(f"start {format_set(start, g.labels)} is not a dominating set")
    adversary = adversary or make_adversary(g, start, cfg, engine)

    configuration = start
    steps: List[Step] = []
    for round_ in range(1, cfg.max_rounds + 1):
        attack = adversary.choose(configuration, trial, round_)
        if attack is None:
            break
        moves = legal_moves(g, configuration, attack)
        if not moves:
            steps.append(Step(round_, configuration, attack, None, FAILED))
            failing = tuple(
                v for v in iter_members(g.full & ~configuration) if not legal_moves(g, configuration, v)
            )
            events.log_event("simulation_failed", level="DEBUG", round=round_, attack=g.label(attack), trial=trial)
            return SimOutcome(Trajectory(steps, failing), FAILED, round_, round_, attack)
        move: Move = moves[draw(cfg.seed, trial, round_, GUARD_SALT) % len(moves)]
        steps.append(Step(round_, configuration, attack, move, CONTINUE))
        configuration = move.apply(configuration)

    if steps:
        last = steps[-1]
        steps[-1] = Step(last.round, last.configuration, last.attack, last.move, SURVIVED)
    return SimOutcome(Trajectory(steps), SURVIVED, len(steps))


@dataclass
class MonteCarloStats:
    trials: int
    failures: int = 0
    mean_failure_round: Optional[float] = None
    example: Optional[SimOutcome] = None
    failure_rounds: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            "trials": self.trials,
            "failures": self.failures,
            "mean_failure_round": self.mean_failure_round,
            "example": self.example.to_dict() if self.example else None,
        }


def _run_trials(
    g: Graph, start: VertexSet, cfg: ProtocolConfig, trials: Sequence[int], node_cap: Optional[int]
) -> List[Tuple[int, Optional[SimOutcome]]]:
    engine = InvariantEngine(g, node_cap) if cfg.adversary == "oracle" else None
    adversary = make_adversary(g, start, cfg, engine)
    results = []
    for trial in trials:
        outcome = simulate(g, start, cfg, trial, engine, adversary)
        results.append((trial, outcome if outcome.failed else None))
    return results


def monte_carlo(
    g: Graph,
    start: VertexSet,
    cfg: ProtocolConfig,
    trials: int,
    threads: int = 1,
    node_cap: Optional[int] = DEFAULT_NODE_CAP,
) -> MonteCarloStats:
    """
    Independent runs with trial indices 0..trials-1

    The example is the failing run with the lowest trial index, so the
    statistics do not depend on the thread count.
    """
    stats = MonteCarloStats(trials)
    if trials <= 0:
        return stats
    if not is_dominating(g, start):
        raise VertexSetError(f"start {format_set(start, g.labels)} is not a dominating set")

    workers = threads if threads > 0 else (os.cpu_count() or 1)
    indices = list(range(trials))
    if workers > 1 and trials > 1:
        chunks = [indices[w::workers] for w in range(workers) if indices[w::workers]]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            parts = pool.map(_run_trials, *zip(*[(g, start, cfg, chunk, node_cap) for chunk in chunks]))
            results = sorted((item for part in parts for item in part), key=lambda item: item[0])
    else:
        results = _run_trials(g, start, cfg, indices, node_cap)

    for _, outcome in results:
        if outcome is None:
            continue
        stats.failures += 1
        stats.failure_rounds.append(outcome.rounds)
        if stats.example is None:
            stats.example = outcome
    if stats.failure_rounds:
        stats.mean_failure_round = sum(stats.failure_rounds) / len(stats.failure_rounds)
    events.log_event("monte_carlo", trials=trials, failures=stats.failures, adversary=cfg.adversary)
    return stats


@dataclass
class ExhaustiveResult:
    """
    Attributes:
        reachable: Configurations reachable from the start under any attacks and
            any legal responses
        failure: Shortest attack/response line to an unanswerable attack, if one exists
    """
    reachable: int
    failure: Optional[Trajectory] = None

    @property
    def sound(self) -> bool:
        return self.failure is None


def exhaustive_check(g: Graph, start: VertexSet) -> ExhaustiveResult:
    """
    Explore the whole game tree from start (as a graph of configurations)

    Uses legal_moves directly rather than the move graph, so it is an
    independent check of the component analysis.
    """
    if not is_dominating(g, start):
        raise VertexSetError(f"start {format_set(start, g.labels)} is not a dominating set")

    parent: Dict[VertexSet, Optional[Tuple[VertexSet, int, Move]]] = {start: None}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for v in iter_members(g.full & ~s):
            moves = legal_moves(g, s, v)
            if not moves:
                return ExhaustiveResult(len(parent), _line_to(parent, s, v, g))
            for move in moves:
                t = move.apply(s)
                if t not in parent:
                    parent[t] = (s, v, move)
                    queue.append(t)
    return ExhaustiveResult(len(parent))


def _line_to(
    parent: Dict[VertexSet, Optional[Tuple[VertexSet, int, Move]]], end: VertexSet, attack: int, g: Graph
) -> Trajectory:
    chain = []
    s = end
    while parent[s] is not None:
        prev, v, move = parent[s]  # type: ignore[misc]
        chain.append((prev, v, move))
        s = prev
    chain.reverse()
    steps = [Step(r, prev, v, move) for r, (prev, v, move) in enumerate(chain, start=1)]
    steps.append(Step(len(chain) + 1, end, attack, None, FAILED))
    failing = tuple(v for v in iter_members(g.full & ~end) if not legal_moves(g, end, v))
    return Trajectory(steps, failing)
