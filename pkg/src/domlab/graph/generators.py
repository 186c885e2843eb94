"""
Generators for every graph the catalog refers to

Vertex numbering is deterministic: the a-block, then the b-block, then the
c-block, then singletons, each in index order. Labels follow the names used in
the definitions (a_1, b_5, c^2_1, ...), so certificates can be read against the
proofs directly.
"""

import logging
from typing import Dict, Iterator, List, Sequence, Tuple

import networkx as nx

from .graph import Graph, add_edge, cartesian_product, disjoint_union, from_edges, from_networkx, is_connected

logger = logging.getLogger(__name__)


class _LabelledBuilder:
    """Collects labelled vertices and edges, then freezes them into a Graph"""

    def __init__(self):
        self.labels: List[str] = []
        self.edges: List[Tuple[int, int]] = []

    def block(self, prefix: str, count: int, start: int = 1) -> List[int]:
        ids = []
        for i in range(start, start + count):
            ids.append(self.vertex(f"{prefix}_{i}"))
        return ids

    def vertex(self, label: str) -> int:
        self.labels.append(label)
        return len(self.labels) - 1

    def edge(self, u: int, v: int):
        self.edges.append((u, v))

    def clique(self, ids: Sequence[int]):
        for i, u in enumerate(ids):
            for v in ids[i + 1:]:
                self.edge(u, v)

    def build(self, name: str) -> Graph:
        return from_edges(len(self.labels), self.edges, self.labels, name)


def path(n: int) -> Graph:
    builder = _LabelledBuilder()
    a = builder.block("a", n)
    for i in range(n - 1):
        builder.edge(a[i], a[i + 1])
    return builder.build(f"path:{n}")


def cycle(n: int) -> Graph:
    builder = _LabelledBuilder()
    a = builder.block("a", n)
    for i in range(n):
        builder.edge(a[i], a[(i + 1) % n])
    return builder.build(f"cycle:{n}")


def complete(n: int) -> Graph:
    builder = _LabelledBuilder()
    builder.clique(builder.block("v", n))
    return builder.build(f"complete:{n}")


def complete_bipartite(m: int, n: int) -> Graph:
    builder = _LabelledBuilder()
    xs = builder.block("x", m)
    ys = builder.block("y", n)
    for x in xs:
        for y in ys:
            builder.edge(x, y)
    return builder.build(f"kbip:{m},{n}")


def star(n: int) -> Graph:
    """K_{1,n}: centre c and n leaves"""
    builder = _LabelledBuilder()
    leaves = builder.block("l", n)
    centre = builder.vertex("c")
    for leaf in leaves:
        builder.edge(centre, leaf)
    return builder.build(f"star:{n}")


def ladder(n: int) -> Graph:
    return cartesian_product(path(2), path(n)).renamed(f"ladder:{n}")


def family_a(n: int) -> Graph:
    """A_n on {a_1..a_{2n+1}, b_1..b_{2n}, c}"""
    builder = _LabelledBuilder()
    a = builder.block("a", 2 * n + 1)
    b = builder.block("b", 2 * n)
    c = builder.vertex("c")
    builder.clique(a)
    builder.clique(b)
    for i in range(1, 2 * n + 1):
        builder.edge(a[i - 1], b[i - 1])
    for i in range(1, n + 1):
        for j in range(1, 2 * n - i + 1):
            builder.edge(a[i - 1], b[j - 1])
    for v in a + b:
        builder.edge(c, v)
    return builder.build(f"A:{n}")


def family_b(m: int, n: int) -> Graph:
    """
    B_{m,n} on {a_1..a_{2n+3}, b_1..b_{2n+4}, c^1_1, c^2_1, .., c^1_m, c^2_m}

    The rungs (a_i, b_i) run over every matched pair 1 <= i <= 2n+3. With rungs
    only up to n, B_{0,0} already admits an all-secure family of size 2 and the
    set {a_{2n+3}, b_1, c^2_*} stops being dominating once the guard at
    a_{2n+3} slides to b_{2+k}; the full range reproduces both facts the
    parameter computation relies on. See CORRECTIONS.md.
    """
    builder = _LabelledBuilder()
    a = builder.block("a", 2 * n + 3)
    b = builder.block("b", 2 * n + 4)
    c1: List[int] = []
    c2: List[int] = []
    for i in range(1, m + 1):
        c1.append(builder.vertex(f"c^1_{i}"))
        c2.append(builder.vertex(f"c^2_{i}"))
    builder.clique(a)
    builder.clique(b)
    for i in range(2 * n + 3):
        builder.edge(a[i], b[i])
    for i in range(m):
        builder.edge(c1[i], c2[i])
        builder.edge(b[n], c1[i])
    builder.edge(a[0], b[1])
    builder.edge(a[1], b[0])
    for i in range(n + 1):
        for j in range(2 * n - i + 1):
            builder.edge(b[2 + i], a[2 + j])
    return builder.build(f"B:{m},{n}")


def family_c(m: int, n: int) -> Graph:
    """C_{m,n}: two universal vertices a_1, a_2, independent b_1..b_m, a clique on c_1..c_n"""
    builder = _LabelledBuilder()
    a = builder.block("a", 2)
    b = builder.block("b", m)
    c = builder.block("c", n)
    builder.edge(a[0], a[1])
    for hub in a:
        for v in b + c:
            builder.edge(hub, v)
    builder.clique(c)
    return builder.build(f"C:{m},{n}")


def family_d(m: int, n: int) -> Graph:
    builder = _LabelledBuilder()
    a = builder.block("a", 2)
    b1: List[int] = []
    b2: List[int] = []
    for i in range(1, m + 1):
        b1.append(builder.vertex(f"b^1_{i}"))
        b2.append(builder.vertex(f"b^2_{i}"))
    c = builder.block("c", n)
    builder.clique(a + b1)
    for i in range(m):
        builder.edge(b1[i], b2[i])
    builder.clique([a[1]] + c)
    return builder.build(f"D:{m},{n}")


def family_e(m: int, n: int) -> Graph:
    builder = _LabelledBuilder()
    a = builder.block("a", m + 3)
    b = builder.block("b", 2)
    c = builder.block("c", n)
    builder.clique(a)
    for i in range(2):
        for j in range(2):
            builder.edge(a[i], b[j])
    for v in c:
        builder.edge(a[-1], v)
    return builder.build(f"E:{m},{n}")


def family_f(l: int, m: int, n: int) -> Graph:
    builder = _LabelledBuilder()
    a = builder.block("a", l)
    b = builder.block("b", m)
    c = builder.block("c", l + n)
    for i in range(l):
        builder.edge(a[i], c[i])
    for v in b:
        for j in range(l):
            builder.edge(v, c[j])
    builder.clique(c)
    return builder.build(f"F:{l},{m},{n}")


def house() -> Graph:
    """Triangular prism: lower triangle a_1..a_3, upper triangle b_1..b_3, rungs a_i b_i"""
    builder = _LabelledBuilder()
    a = builder.block("a", 3)
    b = builder.block("b", 3)
    builder.clique(a)
    builder.clique(b)
    for i in range(3):
        builder.edge(a[i], b[i])
    return builder.build("house")


def house_diagonal() -> Graph:
    """house plus the diagonal (a_3, b_1)"""
    return add_edge(house(), 2, 3).renamed("house+diag")


def house9() -> Graph:
    """K_4 on a_1..a_4, K_5 on b_1..b_5, rungs (a_i, b_i) for i <= 4, and (b_1, a_2)"""
    builder = _LabelledBuilder()
    a = builder.block("a", 4)
    b = builder.block("b", 5)
    builder.clique(a)
    builder.clique(b)
    for i in range(4):
        builder.edge(a[i], b[i])
    builder.edge(b[0], a[1])
    return builder.build("house9")


def paw2() -> Graph:
    """Triangle t_1 t_2 t_3 with two leaves l_1, l_2 on t_1"""
    builder = _LabelledBuilder()
    t = builder.block("t", 3)
    leaves = builder.block("l", 2)
    builder.clique(t)
    for leaf in leaves:
        builder.edge(t[0], leaf)
    return builder.build("paw2")


def intro6() -> Graph:
    """The six-vertex graph where an unlucky response strands the guards"""
    builder = _LabelledBuilder()
    ids: Dict[str, int] = {name: builder.vertex(name) for name in "abcpef"}
    for u, v in ["ab", "ac", "ap", "ae", "af", "bc", "bp", "be", "bf", "cp"]:
        builder.edge(ids[u], ids[v])
    return builder.build("intro6")


def cone6() -> Graph:
    """
    The A construction at n = 1, below the family minimum: K_4 on c, a_1..a_3,
    K_2 on b_1, b_2, rungs a_1 b_1 and a_2 b_2. Its triple is (1, 2, 3).
    """
    return family_a(1).renamed("cone6")


def c5k3() -> Graph:
    return disjoint_union(cycle(5), complete(3)).renamed("c5k3")


def c5k3_bridge() -> Graph:
    """C_5 + K_3 joined by an edge between their first vertices"""
    return add_edge(c5k3(), 0, 5).renamed("c5k3+bridge")


def random_connected(n: int, p: float, seed: int, max_tries: int = 1000) -> Graph:
    """
    Seeded connected G(n, p) sample

    Draws G(n, p) with seeds seed, seed+1, ... until a connected one appears.
    """
    for attempt in range(max_tries):
        candidate = from_networkx(nx.gnp_random_graph(n, p, seed=seed + attempt))
        if is_connected(candidate):
            return candidate.renamed(f"gnp({n},{p},{seed + attempt})")
    raise ValueError(f"no connected G({n},{p}) within {max_tries} draws from seed {seed}")


def atlas_graphs(max_order: int, min_order: int = 1) -> Iterator[Graph]:
    """Every graph on min_order..max_order vertices (up to isomorphism), max_order <= 7"""
    if max_order > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    for index, graph in enumerate(nx.graph_atlas_g()):
        if min_order <= graph.number_of_nodes() <= max_order:
            yield from_networkx(graph, name=f"atlas:{index}")


def named_graphs() -> Dict[str, Graph]:
    """Fresh instances of the bespoke catalog graphs by spec name"""
    return {name: build() for name, build in NAMED.items()}


NAMED = {
    "house": house,
    "house+diag": house_diagonal,
    "house9": house9,
    "paw2": paw2,
    "intro6": intro6,
    "c5k3": c5k3,
    "c5k3+bridge": c5k3_bridge,
    "cone6": cone6,
}
