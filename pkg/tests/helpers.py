"""Naive oracles and hypothesis strategies shared by the test modules.

The oracles enumerate every vertex map with ``itertools.product`` and share
no code with the counting engine.
"""
from __future__ import annotations

import itertools
import random

import networkx as nx
from hypothesis import strategies as st

from modhom.graph import Graph


def naive_homs(g: Graph, h: Graph, bip: bool = False, pins=None):
    pins = pins or {}
    gv = list(g.vertices)
    hv = list(h.vertices)
    hedges = {frozenset(e) for e in h.edges}
    choices = []
    for v in gv:
        if v in pins:
            choices.append([pins[v]])
        elif bip:
            choices.append([w for w in hv if h.side(w) == g.side(v)])
        else:
            choices.append(hv)
    for img in itertools.product(*choices):
        phi = dict(zip(gv, img))
        if all(frozenset((phi[u], phi[w])) in hedges for u, w in g.edges):
            yield phi


def naive_count(g: Graph, h: Graph, bip: bool = False, pins=None) -> int:
    return sum(1 for _ in naive_homs(g, h, bip, pins))


def naive_inj(g: Graph, h: Graph) -> int:
    return sum(1 for phi in naive_homs(g, h) if len(set(phi.values())) == g.n)


def naive_aut(h: Graph, bip: bool = False) -> int:
    """Permutations preserving adjacency (and sides when ``bip``)."""
    hv = list(h.vertices)
    edges = {frozenset(e) for e in h.edges}
    total = 0
    for perm in itertools.permutations(hv):
        phi = dict(zip(hv, perm))
        if bip and any(h.side(v) != h.side(phi[v]) for v in hv):
            continue
        if {frozenset((phi[u], phi[w])) for u, w in h.edges} == edges:
            total += 1
    return total


def naive_part_surj(g: Graph, h: Graph, dv, de) -> int:
    de = {frozenset(e) for e in de}
    total = 0
    for phi in naive_homs(g, h):
        if not set(dv) <= set(phi.values()):
            continue
        if not de <= {frozenset((phi[u], phi[w])) for u, w in g.edges}:
            continue
        total += 1
    return total


def nx_isomorphic(a: Graph, b: Graph, bip: bool = False) -> bool:
    """networkx isomorphism with loops and optional sides as node attributes."""
    def conv(g):
        x = nx.Graph()
        for v in g.vertices:
            x.add_node(v, loop=g.has_loop(v), side=g.side(v) if bip else None)
        x.add_edges_from((u, w) for u, w in g.edges if u != w)
        return x
    match = nx.algorithms.isomorphism.categorical_node_match(["loop", "side"], [False, None])
    return nx.is_isomorphic(conv(a), conv(b), node_match=match)


# ----- strategies -----------------------------------------------------------------

@st.composite
def graphs(draw, min_n=0, max_n=5, loops=True, connected=False):
    n = draw(st.integers(min_n, max_n))
    vs = [f"v{i}" for i in range(n)]
    pairs = [(vs[i], vs[j]) for i in range(n) for j in range(i + (0 if loops else 1), n)]
    chosen = [e for e in pairs if draw(st.booleans())]
    if connected and n > 1:
        # add a random spanning tree so every draw is connected
        for j in range(1, n):
            i = draw(st.integers(0, j - 1))
            e = (vs[i], vs[j])
            if e not in chosen:
                chosen.append(e)
    return Graph(vs, chosen)


@st.composite
def bipartite_graphs(draw, min_n=0, max_n=5, connected=False):
    n = draw(st.integers(min_n, max_n))
    vs = [f"v{i}" for i in range(n)]
    tree = set()
    if connected:
        # sides follow a random spanning tree, so the draw is connected
        side = {vs[0]: "L"} if n else {}
        for j in range(1, n):
            i = draw(st.integers(0, j - 1))
            side[vs[j]] = "R" if side[vs[i]] == "L" else "L"
            tree.add((vs[i], vs[j]))
    else:
        side = {v: draw(st.sampled_from("LR")) for v in vs}
    pairs = [(a, b) for a, b in itertools.combinations(vs, 2) if side[a] != side[b]]
    chosen = [e for e in pairs if e in tree or draw(st.booleans())]
    return Graph(vs, chosen, side)


def random_graph(rng: random.Random, n: int, density: float = 0.5, loops: bool = True) -> Graph:
    vs = [f"v{i}" for i in range(n)]
    es = [(vs[i], vs[j]) for i in range(n) for j in range(i if loops else i + 1, n)
          if rng.random() < (density * 0.4 if i == j else density)]
    return Graph(vs, es)


def random_connected_graph(rng: random.Random, n: int, density: float = 0.4,
                           loops: bool = True) -> Graph:
    vs = [f"v{i}" for i in range(n)]
    es = set()
    for j in range(1, n):
        es.add((vs[rng.randrange(j)], vs[j]))
    for i in range(n):
        for j in range(i, n):
            if i == j and not loops:
                continue
            if rng.random() < (density * 0.4 if i == j else density * 0.5):
                if (vs[j], vs[i]) not in es:
                    es.add((vs[i], vs[j]))
    return Graph(vs, sorted(es))


def random_bipartite(rng: random.Random, n: int, density: float = 0.5) -> Graph:
    vs = [f"v{i}" for i in range(n)]
    side = {v: rng.choice("LR") for v in vs}
    es = [(a, b) for a, b in itertools.combinations(vs, 2)
          if side[a] != side[b] and rng.random() < density]
    return Graph(vs, es, side)


def random_connected_bipartite(rng: random.Random, n: int, density: float = 0.4) -> Graph:
    """Random spanning tree (sides alternate along it) plus random cross edges."""
    vs = [f"v{i}" for i in range(n)]
    side = {vs[0]: "L"} if n else {}
    es = set()
    for j in range(1, n):
        i = rng.randrange(j)
        side[vs[j]] = "R" if side[vs[i]] == "L" else "L"
        es.add((vs[i], vs[j]))
    for a, b in itertools.combinations(vs, 2):
        if side[a] != side[b] and (a, b) not in es and rng.random() < density:
            es.add((a, b))
    return Graph(vs, sorted(es), side)


def all_bipartite_graphs(max_n: int):
    """Every bipartitioned graph on v0..v(n-1), n <= max_n, one per (sides, edges)."""
    for n in range(1, max_n + 1):
        vs = [f"v{i}" for i in range(n)]
        for sides in itertools.product("LR", repeat=n):
            side = dict(zip(vs, sides))
            pairs = [(a, b) for a, b in itertools.combinations(vs, 2) if side[a] != side[b]]
            for mask in range(1 << len(pairs)):
                es = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
                yield Graph(vs, es, side)
