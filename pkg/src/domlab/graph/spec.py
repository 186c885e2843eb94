"""
GraphSpec: textual constructor expressions

Grammar:

    spec := path:N | cycle:N | complete:N | kbip:M,N | star:N | ladder:N
          | cart(spec,spec) | disjoint(spec,spec)
          | A:N | B:M,N | C:M,N | D:M,N | E:M,N | F:L,M,N
          | house | house+diag | house9 | paw2 | intro6 | c5k3 | c5k3+bridge | cone6
          | file:PATH

Inside cart(...) / disjoint(...) a file path ends at the next ',' or ')'.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Optional, Tuple, Union

from ..errors import GraphSpecError, ParameterRangeError
from . import generators
from .graph import Graph, cartesian_product, disjoint_union

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Family:
    builder: Callable[..., Graph]
    minima: Tuple[int, ...]
    description: str


FAMILIES: Dict[str, Family] = {
    "path": Family(generators.path, (1,), "path P_N"),
    "cycle": Family(generators.cycle, (3,), "cycle C_N"),
    "complete": Family(generators.complete, (1,), "complete graph K_N"),
    "kbip": Family(generators.complete_bipartite, (1, 1), "complete bipartite K_{M,N}"),
    "star": Family(generators.star, (1,), "star K_{1,N}"),
    "ladder": Family(generators.ladder, (1,), "ladder P_2 x P_N"),
    "A": Family(generators.family_a, (2,), "cone over two cliques"),
    "B": Family(generators.family_b, (0, 0), "two cliques with pendant paths"),
    "C": Family(generators.family_c, (2, 1), "fattened star"),
    "D": Family(generators.family_d, (1, 1), "leaves and one clique"),
    "E": Family(generators.family_e, (1, 1), "two-bridge with leaves"),
    "F": Family(generators.family_f, (1, 1, 1), "leaves and bridges"),
}

OPERATORS = ("cart", "disjoint")


@dataclass(frozen=True)
class GraphSpec:
    """
    Parsed constructor expression

    kind is a family name, an operator, a named graph, or "file".
    """
    kind: str
    params: Tuple[int, ...] = ()
    operands: Tuple["GraphSpec", ...] = ()
    path: Optional[str] = None

    @classmethod
    def parse(cls, text: str) -> "GraphSpec":
        return _Parser(text).parse()

    def serialize(self) -> str:
        if self.kind == "file":
            return f"file:{self.path}"
        if self.kind in OPERATORS:
            return f"{self.kind}({self.operands[0].serialize()},{self.operands[1].serialize()})"
        if self.kind in FAMILIES:
            return f"{self.kind}:" + ",".join(str(p) for p in self.params)
        return self.kind

    def build(self) -> Graph:
        if self.kind == "file":
            from .io import read_edge_list

            return read_edge_list(Path(self.path or "")).renamed(self.serialize())
        if self.kind == "cart":
            left, right = (operand.build() for operand in self.operands)
            return cartesian_product(left, right).renamed(self.serialize())
        if self.kind == "disjoint":
            left, right = (operand.build() for operand in self.operands)
            return disjoint_union(left, right).renamed(self.serialize())
        if self.kind in FAMILIES:
            return FAMILIES[self.kind].builder(*self.params).renamed(self.serialize())
        return generators.NAMED[self.kind]()

    def __str__(self) -> str:
        return self.serialize()


def generate(spec: Union[str, GraphSpec]) -> Graph:
    """Parse (if needed) and build; the graph's name is the canonical spec text"""
    parsed = spec if isinstance(spec, GraphSpec) else GraphSpec.parse(spec)
    graph = parsed.build()
    logger.debug(f"Generated {parsed}: n={graph.n} m={graph.edge_count}")
    return graph


class _Parser:
    """Recursive descent over the spec grammar"""

    def __init__(self, text: str):
        self.text = text.strip()
        self.pos = 0
        self.depth = 0

    def parse(self) -> GraphSpec:
        if not self.text:
            raise GraphSpecError("empty graph spec", self.text, 0)
        spec = self._spec()
        if self.pos != len(self.text):
            self._fail("unexpected trailing input")
        return spec

    def _fail(self, message: str):
        raise GraphSpecError(message, self.text, self.pos)

    def _peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, char: str):
        if self._peek() != char:
            found = self._peek() or "end of input"
            self._fail(f"expected {char!r}, found {found!r}")
        self.pos += 1

    def _name(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "+"):
            self.pos += 1
        if start == self.pos:
            self._fail("expected a graph name")
        return self.text[start:self.pos]

    def _natural(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self._fail("expected a non-negative integer")
        return int(self.text[start:self.pos])

    def _spec(self) -> GraphSpec:
        start = self.pos
        name = self._name()

        if name in OPERATORS:
            self._expect("(")
            self.depth += 1
            left = self._spec()
            self._expect(",")
            right = self._spec()
            self._expect(")")
            self.depth -= 1
            return GraphSpec(name, operands=(left, right))

        if name == "file":
            self._expect(":")
            return GraphSpec("file", path=self._path())

        if name in FAMILIES:
            family = FAMILIES[name]
            self._expect(":")
            params = [self._natural()]
            # fixed arity keeps kbip:2,3 unambiguous inside cart(...,...)
            while len(params) < len(family.minima):
                self._expect(",")
                params.append(self._natural())
            for value, minimum in zip(params, family.minima):
                if value < minimum:
                    raise ParameterRangeError(
                        f"{name} needs every parameter >= its minimum {family.minima}, got {tuple(params)}",
                        self.text,
                        start,
                    )
            return GraphSpec(name, params=tuple(params))

        if name in generators.NAMED:
            return GraphSpec(name)

        self.pos = start
        self._fail(f"unknown graph {name!r}")
        raise AssertionError("unreachable")

    def _path(self) -> str:
        start = self.pos
        if self.depth == 0:
            self.pos = len(self.text)
        else:
            while self.pos < len(self.text) and self.text[self.pos] not in ",)":
                self.pos += 1
        if start == self.pos:
            self._fail("expected a file path")
        return self.text[start:self.pos]
