"""
Edge-list and DOT serialization

Edge-list format: first line "n m", then m lines "u v" (0-indexed,
whitespace-separated). Anything after '#' on a line is a comment; blank lines
are ignored.
"""

import logging
from pathlib import Path
from typing import List, Optional, Set, Tuple, Union

from ..errors import EdgeListError
from .bitset import EMPTY, VertexSet, contains
from .graph import Graph, from_edges

logger = logging.getLogger(__name__)


def parse_edge_list(text: str, name: Optional[str] = None) -> Graph:
    rows: List[Tuple[int, List[str]]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            rows.append((number, content.split()))

    if not rows:
        raise EdgeListError("missing header line 'n m'", 1)

    header_line, header = rows[0]
    if len(header) != 2:
        raise EdgeListError(f"header must be 'n m', got {' '.join(header)!r}", header_line)
    n, m = (_integer(token, header_line) for token in header)
    if n < 1:
        raise EdgeListError("a graph needs at least one vertex", header_line)

    edges: List[Tuple[int, int]] = []
    seen: Set[Tuple[int, int]] = set()
    for line, tokens in rows[1:]:
        if len(tokens) != 2:
            raise EdgeListError(f"expected 'u v', got {' '.join(tokens)!r}", line)
        u, v = (_integer(token, line) for token in tokens)
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(f"vertex out of range 0..{n - 1} in edge ({u},{v})", line)
        if u == v:
            raise EdgeListError(f"self-loop at vertex {u}", line)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListError(f"duplicate edge ({u},{v})", line)
        seen.add(key)
        edges.append((u, v))

    if len(edges) != m:
        last_line = rows[-1][0]
        raise EdgeListError(f"header announces {m} edges but {len(edges)} were listed", last_line)

    return from_edges(n, edges, None, name)


def _integer(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise EdgeListError(f"not an integer: {token!r}", line) from None


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path: Union[str, Path]) -> Graph:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise EdgeListError(f"cannot read {path}: {e}") from e
    return parse_edge_list(text, name=f"file:{path}")


def to_dot(g: Graph, highlight: VertexSet = EMPTY) -> str:
    """Graphviz text; highlighted vertices are filled"""
    title = (g.name or "G").replace('"', "'")
    lines = [f'graph "{title}" {{']
    for v in range(g.n):
        attrs = f'label="{g.labels[v]}"'
        if contains(highlight, v):
            attrs += ", style=filled, fillcolor=lightblue"
        lines.append(f"  {v} [{attrs}];")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
