"""Named small graphs used throughout the tests and examples."""
from __future__ import annotations

from itertools import combinations

from .graph import LEFT, RIGHT, Graph


def empty_graph() -> Graph:
    return Graph()


def single_vertex(name="v") -> Graph:
    return Graph([name])


def loop_vertex(name="v") -> Graph:
    return Graph([name], [(name, name)])


def complete_graph(n: int) -> Graph:
    vs = [f"k{i}" for i in range(1, n + 1)]
    return Graph(vs, combinations(vs, 2))


def reflexive_complete(q: int) -> Graph:
    vs = [f"q{i}" for i in range(1, q + 1)]
    return Graph(vs, [(v, v) for v in vs] + list(combinations(vs, 2)))


def path_graph(n: int, bipartition: bool = False) -> Graph:
    """P_n on x1..xn; with ``bipartition`` odd-indexed vertices are on L."""
    vs = [f"x{i}" for i in range(1, n + 1)]
    bip = None
    if bipartition:
        bip = {v: (LEFT if i % 2 == 0 else RIGHT) for i, v in enumerate(vs)}
    return Graph(vs, zip(vs, vs[1:]), bip)


def cycle_graph(n: int, bipartition: bool = False) -> Graph:
    """C_n on v1..vn; with ``bipartition`` (n even) odd-indexed vertices are on L."""
    vs = [f"v{i}" for i in range(1, n + 1)]
    edges = list(zip(vs, vs[1:]))
    if n >= 3:
        edges.append((vs[-1], vs[0]))
    elif n == 2:
        edges = [(vs[0], vs[1])]
    bip = None
    if bipartition:
        bip = {v: (LEFT if i % 2 == 0 else RIGHT) for i, v in enumerate(vs)}
    return Graph(vs, edges, bip)


def complete_bipartite(a: int, b: int, bipartition: bool = True) -> Graph:
    left = [f"l{i}" for i in range(1, a + 1)]
    right = [f"r{i}" for i in range(1, b + 1)]
    bip = {LEFT: left, RIGHT: right} if bipartition else None
    return Graph(left + right, [(u, w) for u in left for w in right], bip)


def star(k: int, bipartition: bool = False) -> Graph:
    """K_{1,k} with centre ``c`` (on L) and leaves l1..lk."""
    leaves = [f"l{i}" for i in range(1, k + 1)]
    bip = {LEFT: ["c"], RIGHT: leaves} if bipartition else None
    return Graph(["c"] + leaves, [("c", w) for w in leaves], bip)


def edge_with_loop() -> Graph:
    """An edge a-b with a loop at a."""
    return Graph(["a", "b"], [("a", "a"), ("a", "b")])


def generalized_path(a1: int, a2: int, a3: int, a4: int) -> Graph:
    """P(a1,a2,a3,a4): P4 with x_i blown up into a_i twins named ``x{i}_{j}``.

    x1- and x3-copies lie on L, x2- and x4-copies on R.
    """
    groups = [[f"x{i}_{j}" for j in range(1, a + 1)] for i, a in
              enumerate((a1, a2, a3, a4), 1)]
    edges = [(u, w) for i in range(3) for u in groups[i] for w in groups[i + 1]]
    left = groups[0] + groups[2]
    right = groups[1] + groups[3]
    return Graph([v for grp in groups for v in grp], edges, {LEFT: left, RIGHT: right})


def domino() -> Graph:
    """Two 4-cycles sharing an edge: the 2x3 grid."""
    left = ["a1", "b2", "a3"]
    right = ["b1", "a2", "b3"]
    edges = [("a1", "a2"), ("a2", "a3"), ("b1", "b2"), ("b2", "b3"),
             ("a1", "b1"), ("a2", "b2"), ("a3", "b3")]
    return Graph(["a1", "a2", "a3", "b1", "b2", "b3"], edges, {LEFT: left, RIGHT: right})


def k33_minus_edge() -> Graph:
    g = complete_bipartite(3, 3)
    edges = [e for e in g.edges if e != ("l3", "r3")]
    return Graph(g.vertices, edges, g.bipartition)


def bowtie() -> Graph:
    """Two triangles sharing the vertex ``c``."""
    return Graph(["c", "a1", "a2", "b1", "b2"],
                 [("c", "a1"), ("c", "a2"), ("a1", "a2"),
                  ("c", "b1"), ("c", "b2"), ("b1", "b2")])
