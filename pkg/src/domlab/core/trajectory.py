"""
Trajectories: sequences of (configuration, attack, response) steps

Produced by refutation searches and by the simulator. Each step records the
configuration before the attack; the next step's configuration is the result
of applying the move.
"""

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..graph.bitset import VertexSet, format_set, members
from .kernel import Move

CONTINUE = "continue"
FAILED = "FAILED"
SURVIVED = "SURVIVED"


@dataclass(frozen=True)
class Step:
    round: int
    configuration: VertexSet
    attack: int
    move: Optional[Move]
    verdict: str = CONTINUE

    def to_dict(self) -> Dict:
        return {
            "round": self.round,
            "configuration": members(self.configuration),
            "attack": self.attack,
            "move": list(self.move) if self.move is not None else None,
            "verdict": self.verdict,
        }

    def describe(self, labels: Sequence[str]) -> str:
        where = format_set(self.configuration, labels)
        if self.move is None:
            return f"{where}: attack {labels[self.attack]} has no legal response"
        return f"{where}: attack {labels[self.attack]}, guard {labels[self.move.source]} -> {labels[self.move.target]}"


@dataclass
class Trajectory:
    """
    Attributes:
        steps: Ordered steps
        failing_attacks: At the final configuration, every attack with no legal
            response (empty unless the trajectory ends in failure)
    """
    steps: List[Step] = field(default_factory=list)
    failing_attacks: Tuple[int, ...] = ()

    @property
    def failed(self) -> bool:
        return bool(self.steps) and self.steps[-1].verdict == FAILED

    @property
    def final_configuration(self) -> Optional[VertexSet]:
        if not self.steps:
            return None
        last = self.steps[-1]
        return last.move.apply(last.configuration) if last.move else last.configuration

    def attacks(self) -> List[int]:
        return [step.attack for step in self.steps]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(step.to_dict()) + "\n" for step in self.steps)

    def to_dict(self) -> Dict:
        return {
            "steps": [step.to_dict() for step in self.steps],
            "failed": self.failed,
            "failing_attacks": list(self.failing_attacks),
        }

    def __len__(self) -> int:
        return len(self.steps)
