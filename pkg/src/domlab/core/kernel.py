"""
Domination predicates, legal guard moves and dominating-set enumeration

Sets are VertexSet integers. Enumeration returns sets in colexicographic order,
which for sets of equal size is plain ascending integer order.
"""

import logging
from itertools import combinations
from typing import List, NamedTuple, Optional

from ..errors import OccupiedVertexError, ResourceCapExceeded
from ..graph.bitset import VertexSet, bit, contains, from_members, iter_members, popcount
from ..graph.graph import Graph, max_degree

logger = logging.getLogger(__name__)


class Move(NamedTuple):
    """A guard slides from source (occupied) to target (unoccupied) along an edge"""
    source: int
    target: int

    def apply(self, configuration: VertexSet) -> VertexSet:
        return configuration ^ bit(self.source) ^ bit(self.target)


def covered(g: Graph, s: VertexSet) -> VertexSet:
    """Union of closed neighbourhoods of the members of s"""
    result = 0
    for v in iter_members(s):
        result |= g.closed[v]
    return result


def is_dominating(g: Graph, s: VertexSet) -> bool:
    return covered(g, g.check_set(s)) == g.full


def legal_moves(g: Graph, s: VertexSet, attack: int) -> List[Move]:
    """Moves (w -> attack) with w in S adjacent to the attack that keep S dominating"""
    g.check_set(s)
    if contains(s, attack):
        raise OccupiedVertexError(f"vertex {g.label(attack)} is already guarded")
    moves = []
    for w in iter_members(s & g.adj[attack]):
        if is_dominating(g, s ^ bit(w) ^ bit(attack)):
            moves.append(Move(w, attack))
    return moves


def is_secure_dominating(g: Graph, s: VertexSet) -> bool:
    if not is_dominating(g, s):
        return False
    for v in iter_members(g.full & ~s):
        if not legal_moves(g, s, v):
            return False
    return True


def naive_dominating(g: Graph, k: int) -> List[VertexSet]:
    """Filter of all k-subsets; the reference the pruned enumerator must agree with"""
    if k < 0 or k > g.n:
        return []
    found = [from_members(c) for c in combinations(range(g.n), k)]
    return sorted(s for s in found if covered(g, s) == g.full)


def enumerate_dominating(g: Graph, k: int, cap: Optional[int] = None) -> List[VertexSet]:
    """
    All dominating sets of size k, each once, in ascending order

    Include/exclude search in vertex order with three cuts: the remaining picks
    must fit in the vertices left; excluding vertex i is impossible when some
    vertex whose closed neighbourhood ends at i is still uncovered; and the
    uncovered count may not exceed picks_left * (max_degree + 1).

    Raises ResourceCapExceeded once more than cap sets have been found.
    """
    n = g.n
    if k < 0 or k > n:
        return []
    if k == 0:
        return []

    # vertices whose last chance to be covered is vertex i
    last_chance = [0] * n
    for u in range(n):
        last_chance[g.closed[u].bit_length() - 1] |= bit(u)
    reach = max_degree(g) + 1
    full = g.full
    closed = g.closed
    found: List[VertexSet] = []

    def search(i: int, chosen: VertexSet, cover: VertexSet, left: int):
        if left == 0:
            if cover == full:
                found.append(chosen)
                if cap is not None and len(found) > cap:
                    raise ResourceCapExceeded(k, cap)
            return
        if n - i < left:
            return
        if popcount(full & ~cover) > left * reach:
            return
        search(i + 1, chosen | bit(i), cover | closed[i], left - 1)
        if cover & last_chance[i] == last_chance[i]:
            search(i + 1, chosen, cover, left)

    search(0, 0, 0, k)
    found.sort()
    return found
