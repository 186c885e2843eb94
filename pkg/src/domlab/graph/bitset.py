"""
Vertex sets as Python integers

Bit v of the integer is set when vertex v is a member. Integers are immutable,
unbounded and hashable, so they serve directly as configurations, index keys and
neighbourhoods. Width is tied to the owning graph by Graph.check_set.

Practical limit: representation has none, but the engines enumerate subsets, so
graphs beyond roughly 30 vertices are out of reach for the exact computations.
"""

from typing import Iterable, Iterator, List, Optional, Sequence, TypeAlias

VertexSet: TypeAlias = int

EMPTY: VertexSet = 0


def bit(v: int) -> VertexSet:
    return 1 << v


def full_mask(n: int) -> VertexSet:
    """All vertices 0..n-1"""
    return (1 << n) - 1


def from_members(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_members(mask: VertexSet) -> Iterator[int]:
    """Yield members in increasing order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: VertexSet) -> List[int]:
    return list(iter_members(mask))


def popcount(mask: VertexSet) -> int:
    return mask.bit_count()


def lowest(mask: VertexSet) -> int:
    """Index of the lowest member; -1 for the empty set"""
    return (mask & -mask).bit_length() - 1


def highest(mask: VertexSet) -> int:
    return mask.bit_length() - 1


def contains(mask: VertexSet, v: int) -> bool:
    return (mask >> v) & 1 == 1


def complement(mask: VertexSet, n: int) -> VertexSet:
    return full_mask(n) & ~mask


def format_set(mask: VertexSet, labels: Optional[Sequence[str]] = None) -> str:
    """Render as {x, y, z} using labels when given"""
    names = [labels[v] if labels else str(v) for v in iter_members(mask)]
    return "{" + ", ".join(names) + "}"
