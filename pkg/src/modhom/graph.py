"""Undirected graphs with loops, optional fixed bipartitions, pins and
distinguished elements, plus the basic constructions on them.

Every value here is immutable once built.  Vertex names are opaque hashables;
the builders and the JSON reader use strings.
"""
from __future__ import annotations

import json
from collections import deque
from typing import Hashable, Iterable, Mapping

import networkx as nx

from .errors import (BipartitionViolation, DuplicateEdge, GraphError,
                     PinConflict, UnknownVertex)

Vertex = Hashable
Edge = tuple

LEFT, RIGHT = "L", "R"


def _side_map(vertices, bipartition):
    """Normalise the accepted bipartition spellings into a dict v -> 'L'/'R'."""
    if bipartition is None:
        return None
    if isinstance(bipartition, Mapping) and set(bipartition) <= {LEFT, RIGHT} \
            and all(not isinstance(x, str) or x not in (LEFT, RIGHT)
                    for x in bipartition.values()):
        side = {}
        for s in (LEFT, RIGHT):
            for v in bipartition.get(s, ()):
                if v in side:
                    raise BipartitionViolation(f"vertex {v!r} assigned to both sides")
                side[v] = s
    elif isinstance(bipartition, Mapping):
        side = dict(bipartition)
    else:
        left, right = bipartition
        side = {v: LEFT for v in left}
        for v in right:
            if v in side:
                raise BipartitionViolation(f"vertex {v!r} assigned to both sides")
            side[v] = RIGHT
    vset = set(vertices)
    for v, s in side.items():
        if v not in vset:
            raise UnknownVertex(f"bipartition names unknown vertex {v!r}")
        if s not in (LEFT, RIGHT):
            raise BipartitionViolation(f"vertex {v!r} has side {s!r}")
    missing = [v for v in vertices if v not in side]
    if missing:
        raise BipartitionViolation(f"vertex {missing[0]!r} has no side")
    return side


class Graph:
    """A finite undirected graph; a pair (v, v) is a loop.

    ``bipartition`` may be a dict ``{"L": [...], "R": [...]}``, a dict
    mapping vertices to ``"L"``/``"R"``, or a pair ``(left, right)``.
    """

    __slots__ = ("_vertices", "_index", "_adj", "_side", "_masks", "_hash")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable = (),
                 bipartition=None):
        verts = tuple(vertices)
        index = {}
        for i, v in enumerate(verts):
            if v in index:
                raise GraphError(f"duplicate vertex {v!r}")
            index[v] = i
        adj = {v: set() for v in verts}
        for e in edges:
            e = tuple(e)
            if len(e) != 2:
                raise GraphError(f"edge {list(e)!r} does not have two endpoints")
            u, w = e
            for x in (u, w):
                if x not in index:
                    raise UnknownVertex(f"edge [{u!r}, {w!r}] uses unknown vertex {x!r}")
            if w in adj[u]:
                raise DuplicateEdge(f"duplicate edge [{u!r}, {w!r}]")
            adj[u].add(w)
            adj[w].add(u)
        side = _side_map(verts, bipartition)
        if side is not None:
            for u in verts:
                for w in adj[u]:
                    if u == w:
                        raise BipartitionViolation(
                            f"loop [{u!r}, {u!r}] in a bipartitioned graph")
                    if side[u] == side[w]:
                        raise BipartitionViolation(
                            f"edge [{u!r}, {w!r}] joins two vertices of side {side[u]}")
        self._init(verts, index, {v: frozenset(a) for v, a in adj.items()}, side)

    def _init(self, verts, index, adj, side):
        self._vertices = verts
        self._index = index
        self._adj = adj
        self._side = side
        self._masks = None
        self._hash = None

    @classmethod
    def _build(cls, verts, adj, side=None) -> "Graph":
        """Trusted constructor: ``adj`` must already be symmetric."""
        g = cls.__new__(cls)
        verts = tuple(verts)
        g._init(verts, {v: i for i, v in enumerate(verts)},
                {v: frozenset(adj.get(v, ())) for v in verts},
                None if side is None else {v: side[v] for v in verts})
        return g

    # ----- basic accessors -------------------------------------------------
    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def __iter__(self):
        return iter(self._vertices)

    def index(self, v) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def check_vertex(self, v):
        if v not in self._index:
            raise UnknownVertex(f"unknown vertex {v!r}")

    def neighbours(self, v) -> frozenset:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def degree(self, v) -> int:
        """|Γ(v)|; a loop contributes v itself once."""
        return len(self.neighbours(v))

    def has_edge(self, u, v) -> bool:
        return v in self._adj.get(u, ())

    def has_loop(self, v) -> bool:
        return v in self._adj.get(v, ())

    @property
    def edges(self) -> tuple:
        idx = self._index
        out = []
        for u in self._vertices:
            iu = idx[u]
            for w in self._adj[u]:
                if idx[w] >= iu:
                    out.append((u, w))
        out.sort(key=lambda e: (idx[e[0]], idx[e[1]]))
        return tuple(out)

    @property
    def m(self) -> int:
        return sum(len(a) + (v in a) for v, a in self._adj.items()) // 2

    @property
    def loops(self) -> tuple:
        return tuple(v for v in self._vertices if v in self._adj[v])

    def canonical_edge(self, u, v) -> tuple:
        return (u, v) if self._index[u] <= self._index[v] else (v, u)

    # ----- bipartition -----------------------------------------------------
    @property
    def has_bipartition(self) -> bool:
        return self._side is not None

    @property
    def bipartition(self):
        return None if self._side is None else dict(self._side)

    def side(self, v) -> str:
        if self._side is None:
            from .errors import MissingBipartition
            raise MissingBipartition("graph has no fixed bipartition")
        return self._side[v]

    @property
    def left(self) -> tuple:
        return tuple(v for v in self._vertices if self.side(v) == LEFT)

    @property
    def right(self) -> tuple:
        return tuple(v for v in self._vertices if self.side(v) == RIGHT)

    def with_bipartition(self, bipartition) -> "Graph":
        return Graph(self._vertices, self.edges, bipartition)

    def forget_bipartition(self) -> "Graph":
        return Graph._build(self._vertices, self._adj)

    def flipped(self) -> "Graph":
        """Same graph with the two sides exchanged."""
        side = {v: (RIGHT if s == LEFT else LEFT) for v, s in self._side.items()}
        return Graph._build(self._vertices, self._adj, side)

    # ----- misc ------------------------------------------------------------
    def adjacency_masks(self) -> list:
        """Bitmask adjacency indexed by vertex position."""
        if self._masks is None:
            idx = self._index
            masks = []
            for v in self._vertices:
                m = 0
                for w in self._adj[v]:
                    m |= 1 << idx[w]
                masks.append(m)
            self._masks = masks
        return self._masks

    def adjacency_matrix(self) -> list:
        idx = self._index
        return [[1 if w in self._adj[v] else 0 for w in self._vertices]
                for v in self._vertices]

    def relabel(self, mapping) -> "Graph":
        """Rename vertices by a dict or callable (must be injective)."""
        f = mapping if callable(mapping) else (lambda v: mapping.get(v, v))
        new = [f(v) for v in self._vertices]
        if len(set(new)) != len(new):
            raise GraphError("relabelling is not injective")
        ren = dict(zip(self._vertices, new))
        adj = {ren[v]: {ren[w] for w in a} for v, a in self._adj.items()}
        side = None if self._side is None else {ren[v]: s for v, s in self._side.items()}
        return Graph._build(new, adj, side)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self._vertices)
        g.add_edges_from(self.edges)
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (set(self._vertices) == set(other._vertices)
                and self._adj == other._adj and self._side == other._side)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._vertices),
                               frozenset(frozenset(e) for e in self.edges)))
        return self._hash

    def __repr__(self) -> str:
        bip = ", bip" if self._side is not None else ""
        return f"Graph(n={self.n}, m={self.m}{bip})"


class DistinguishedGraph:
    """A house (H, V^dist, E^dist).

    Endpoints of distinguished edges are added to the distinguished vertices.
    """

    __slots__ = ("graph", "dist_vertices", "dist_edges")

    def __init__(self, graph: Graph, dist_vertices: Iterable = (), dist_edges: Iterable = ()):
        dv = set()
        for v in dist_vertices:
            graph.check_vertex(v)
            dv.add(v)
        de = set()
        for e in dist_edges:
            u, w = tuple(e)
            if not graph.has_edge(u, w):
                raise GraphError(f"distinguished edge [{u!r}, {w!r}] is not an edge")
            de.add(graph.canonical_edge(u, w))
            dv.update((u, w))
        self.graph = graph
        self.dist_vertices = frozenset(dv)
        self.dist_edges = frozenset(de)

    def sorted_dist_vertices(self) -> tuple:
        return tuple(v for v in self.graph.vertices if v in self.dist_vertices)

    def sorted_dist_edges(self) -> tuple:
        idx = self.graph.index
        return tuple(sorted(self.dist_edges, key=lambda e: (idx(e[0]), idx(e[1]))))

    def __eq__(self, other):
        if not isinstance(other, DistinguishedGraph):
            return NotImplemented
        return (self.graph == other.graph and self.dist_vertices == other.dist_vertices
                and self.dist_edges == other.dist_edges)

    def __hash__(self):
        return hash((self.graph, self.dist_vertices, self.dist_edges))

    def __repr__(self):
        return (f"DistinguishedGraph({self.graph!r}, |Vd|={len(self.dist_vertices)}, "
                f"|Ed|={len(self.dist_edges)})")


class LabelledGraph:
    """A graph with a partial pin map into some target and an ordered tuple
    of distinguished vertices disjoint from the pinned ones."""

    __slots__ = ("graph", "pins", "distinguished")

    def __init__(self, graph: Graph, pins: Mapping | None = None,
                 distinguished: Iterable = ()):
        pins = dict(pins or {})
        for v in pins:
            graph.check_vertex(v)
        dist = tuple(distinguished)
        for v in dist:
            graph.check_vertex(v)
            if v in pins:
                raise PinConflict(f"distinguished vertex {v!r} is pinned")
        if len(set(dist)) != len(dist):
            raise GraphError("distinguished vertices must be distinct")
        self.graph = graph
        self.pins = pins
        self.distinguished = dist

    def relabel(self, mapping) -> "LabelledGraph":
        f = mapping if callable(mapping) else (lambda v: mapping.get(v, v))
        return LabelledGraph(self.graph.relabel(f), {f(v): t for v, t in self.pins.items()},
                             tuple(f(v) for v in self.distinguished))

    def with_distinguished(self, distinguished) -> "LabelledGraph":
        return LabelledGraph(self.graph, self.pins, distinguished)

    def __repr__(self):
        return (f"LabelledGraph({self.graph!r}, pins={len(self.pins)}, "
                f"dist={self.distinguished!r})")


def as_labelled(g) -> LabelledGraph:
    return g if isinstance(g, LabelledGraph) else LabelledGraph(g)


# ----- JSON interchange ------------------------------------------------------

def _check_name(v):
    if not isinstance(v, str):
        raise GraphError(f"vertex names must be strings, got {v!r}")
    return v


def graph_from_dict(doc: Mapping) -> Graph:
    if not isinstance(doc, Mapping) or "vertices" not in doc:
        raise GraphError("graph document needs a 'vertices' array")
    verts = [_check_name(v) for v in doc["vertices"]]
    edges = []
    for e in doc.get("edges", []):
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise GraphError(f"edge {e!r} must be a 2-element array")
        edges.append((_check_name(e[0]), _check_name(e[1])))
    bip = doc.get("bipartition")
    if bip is not None:
        if not isinstance(bip, Mapping):
            raise GraphError("bipartition must be an object with keys L and R")
        bip = {LEFT: list(bip.get(LEFT, [])), RIGHT: list(bip.get(RIGHT, []))}
    return Graph(verts, edges, bip)


def distinguished_from_dict(doc: Mapping) -> DistinguishedGraph:
    g = graph_from_dict(doc)
    return DistinguishedGraph(g, doc.get("dist_vertices", []),
                              [tuple(e) for e in doc.get("dist_edges", [])])


def graph_to_dict(g) -> dict:
    dg = None
    if isinstance(g, DistinguishedGraph):
        dg, g = g, g.graph
    doc = {"vertices": [str(v) for v in g.vertices],
           "edges": [[str(u), str(w)] for u, w in g.edges]}
    if g.has_bipartition:
        doc["bipartition"] = {LEFT: [str(v) for v in g.left],
                              RIGHT: [str(v) for v in g.right]}
    if dg is not None:
        doc["dist_vertices"] = [str(v) for v in dg.sorted_dist_vertices()]
        doc["dist_edges"] = [[str(u), str(w)] for u, w in dg.sorted_dist_edges()]
    return doc


def loads(text: str):
    """Parse a JSON graph; returns a DistinguishedGraph when dist keys appear."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from None
    if isinstance(doc, Mapping) and ("dist_vertices" in doc or "dist_edges" in doc):
        return distinguished_from_dict(doc)
    return graph_from_dict(doc)


def dumps(g) -> str:
    return json.dumps(graph_to_dict(g), sort_keys=True)


# ----- constructions ---------------------------------------------------------

def _suffix(v, tag):
    return f"{v}{tag}"


def disjoint_union(g1, g2):
    """Disjoint union with names suffixed ``#1`` / ``#2``.

    Labelled inputs keep their pins; distinguished tuples are concatenated.
    """
    if isinstance(g1, LabelledGraph) or isinstance(g2, LabelledGraph):
        a, b = as_labelled(g1), as_labelled(g2)
        g = disjoint_union(a.graph, b.graph)
        pins = {_suffix(v, "#1"): t for v, t in a.pins.items()}
        pins.update({_suffix(v, "#2"): t for v, t in b.pins.items()})
        dist = tuple(_suffix(v, "#1") for v in a.distinguished) + \
            tuple(_suffix(v, "#2") for v in b.distinguished)
        return LabelledGraph(g, pins, dist)
    verts = [_suffix(v, "#1") for v in g1.vertices] + [_suffix(v, "#2") for v in g2.vertices]
    adj = {}
    for g, tag in ((g1, "#1"), (g2, "#2")):
        for v in g.vertices:
            adj[_suffix(v, tag)] = {_suffix(w, tag) for w in g.neighbours(v)}
    side = None
    if g1.has_bipartition and g2.has_bipartition:
        side = {_suffix(v, "#1"): g1.side(v) for v in g1.vertices}
        side.update({_suffix(v, "#2"): g2.side(v) for v in g2.vertices})
    return Graph._build(verts, adj, side)


def union_all(graphs) -> Graph:
    """Disjoint union of many graphs, the i-th copy suffixed ``#i``."""
    verts, adj, side = [], {}, {}
    graphs = list(graphs)
    bip = all(g.has_bipartition for g in graphs)
    for i, g in enumerate(graphs, 1):
        tag = f"#{i}"
        for v in g.vertices:
            nv = _suffix(v, tag)
            verts.append(nv)
            adj[nv] = {_suffix(w, tag) for w in g.neighbours(v)}
            if bip:
                side[nv] = g.side(v)
    return Graph._build(verts, adj, side if bip and graphs else None)


def tensor_product(g1: Graph, g2: Graph) -> Graph:
    """(u,v) ~ (u',v') iff u ~ u' and v ~ v'; vertices named ``(u,v)``."""
    name = {(u, v): f"({u},{v})" for u in g1.vertices for v in g2.vertices}
    verts = [name[(u, v)] for u in g1.vertices for v in g2.vertices]
    adj = {}
    for u in g1.vertices:
        for v in g2.vertices:
            adj[name[(u, v)]] = {name[(a, b)] for a in g1.neighbours(u)
                                 for b in g2.neighbours(v)}
    return Graph._build(verts, adj)


def quotient(g: Graph, mapping: Mapping) -> Graph:
    """Merge vertices according to ``mapping`` (old -> new); duplicate edges collapse."""
    f = lambda v: mapping.get(v, v)
    verts = []
    seen = set()
    for v in g.vertices:
        nv = f(v)
        if nv not in seen:
            seen.add(nv)
            verts.append(nv)
    adj = {v: set() for v in verts}
    for u, w in g.edges:
        adj[f(u)].add(f(w))
        adj[f(w)].add(f(u))
    side = None
    if g.has_bipartition:
        side = {}
        for v in g.vertices:
            s = side.setdefault(f(v), g.side(v))
            if s != g.side(v):
                raise BipartitionViolation(f"merging {v!r} into {f(v)!r} mixes sides")
    return Graph._build(verts, adj, side)


def identify(g1, v1, g2, v2, new_name=None):
    """Glue ``g1`` and ``g2`` by identifying ``v1`` with ``v2``.

    Names of ``g1`` are kept; clashing names of ``g2`` get a ``#2`` suffix.
    Pins are merged, distinguished tuples concatenated without repeats.
    """
    labelled = isinstance(g1, LabelledGraph) or isinstance(g2, LabelledGraph)
    a, b = as_labelled(g1), as_labelled(g2)
    a.graph.check_vertex(v1)
    b.graph.check_vertex(v2)
    if v1 in a.pins or v2 in b.pins:
        raise PinConflict("cannot identify a pinned vertex")
    name = v1 if new_name is None else new_name
    ren1 = {v: v for v in a.graph.vertices}
    ren1[v1] = name
    if name != v1 and name in a.graph:
        raise GraphError(f"new name {name!r} already used")
    used = set(ren1.values())
    ren2 = {}
    for v in b.graph.vertices:
        if v == v2:
            ren2[v] = name
            continue
        nv = v
        while nv in used:
            nv = f"{nv}#2"
        ren2[v] = nv
        used.add(nv)
    verts = [ren1[v] for v in a.graph.vertices] + \
        [ren2[v] for v in b.graph.vertices if v != v2]
    adj = {v: set() for v in verts}
    for g, ren in ((a.graph, ren1), (b.graph, ren2)):
        for u, w in g.edges:
            adj[ren[u]].add(ren[w])
            adj[ren[w]].add(ren[u])
    side = None
    if a.graph.has_bipartition and b.graph.has_bipartition:
        if a.graph.side(v1) != b.graph.side(v2):
            raise BipartitionViolation("identified vertices lie on different sides")
        side = {ren1[v]: a.graph.side(v) for v in a.graph.vertices}
        side.update({ren2[v]: b.graph.side(v) for v in b.graph.vertices})
    g = Graph._build(verts, adj, side)
    if not labelled:
        return g
    pins = {ren1[v]: t for v, t in a.pins.items()}
    pins.update({ren2[v]: t for v, t in b.pins.items()})
    dist = [ren1[v] for v in a.distinguished]
    for v in b.distinguished:
        if ren2[v] not in dist:
            dist.append(ren2[v])
    return LabelledGraph(g, pins, dist)


def induced_subgraph(g: Graph, keep: Iterable) -> Graph:
    keep = set(keep)
    for v in keep:
        g.check_vertex(v)
    verts = [v for v in g.vertices if v in keep]
    adj = {v: g.neighbours(v) & keep for v in verts}
    side = g.bipartition
    return Graph._build(verts, adj, side)


def delete(g: Graph, vertices: Iterable = (), edges: Iterable = ()) -> Graph:
    """Remove edges, then vertices (with their incident edges)."""
    drop = set(vertices)
    adj = {v: set(g.neighbours(v)) for v in g.vertices if v not in drop}
    for u, w in edges:
        if not g.has_edge(u, w):
            raise GraphError(f"edge [{u!r}, {w!r}] is not present")
        if u in adj:
            adj[u].discard(w)
        if w in adj:
            adj[w].discard(u)
    for v in adj:
        adj[v] -= drop
    return Graph._build([v for v in g.vertices if v not in drop], adj, g.bipartition)


def common_neighbourhood(g: Graph, vs: Iterable) -> frozenset:
    vs = list(vs)
    if not vs:
        return frozenset(g.vertices)
    out = set(g.neighbours(vs[0]))
    for v in vs[1:]:
        out &= g.neighbours(v)
    return frozenset(out)


def second_neighbourhood(g: Graph, v) -> frozenset:
    out = set()
    for w in g.neighbours(v):
        out |= g.neighbours(w)
    return frozenset(out)


def two_ball(g: Graph, v) -> Graph:
    """B_2(v) = G[Γ(v) ∪ Γ(Γ(v))]; empty for an isolated vertex."""
    ball = set(g.neighbours(v)) | second_neighbourhood(g, v)
    return induced_subgraph(g, ball)


def component_vertex_sets(g: Graph) -> list:
    seen = set()
    out = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = []
        seen.add(s)
        queue = deque([s])
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in g.neighbours(v):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        idx = g.index
        out.append(tuple(sorted(comp, key=idx)))
    return out


def connected_components(g: Graph) -> list:
    return [induced_subgraph(g, c) for c in component_vertex_sets(g)]


def is_connected(g: Graph) -> bool:
    return len(component_vertex_sets(g)) <= 1


def distance(g: Graph, u, v):
    """Length of a shortest u-v path, or None if disconnected."""
    g.check_vertex(u)
    g.check_vertex(v)
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            return dist[x]
        for w in g.neighbours(x):
            if w not in dist:
                dist[w] = dist[x] + 1
                queue.append(w)
    return None


def blocks(g: Graph) -> list:
    """Block decomposition.  Bridges, isolated vertices and loops are blocks."""
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices)
    nxg.add_edges_from((u, w) for u, w in g.edges if u != w)
    out = []
    idx = g.index
    for comp_edges in nx.biconnected_component_edges(nxg):
        verts = set()
        adj = {}
        for u, w in comp_edges:
            verts.update((u, w))
            adj.setdefault(u, set()).add(w)
            adj.setdefault(w, set()).add(u)
        out.append(Graph._build(sorted(verts, key=idx), adj, g.bipartition))
    for v in g.vertices:
        if g.has_loop(v):
            out.append(Graph._build([v], {v: {v}}))
        elif not any(w != v for w in g.neighbours(v)):
            out.append(Graph._build([v], {}, g.bipartition))
    out.sort(key=lambda b: (min(idx(v) for v in b.vertices), b.n))
    return out


# ----- predicates ------------------------------------------------------------

def two_colouring(g: Graph):
    """A proper 2-colouring as ``(left, right)`` vertex tuples, or None."""
    colour = {}
    for s in g.vertices:
        if s in colour:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbours(v):
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return None
    return (tuple(v for v in g.vertices if colour[v] == 0),
            tuple(v for v in g.vertices if colour[v] == 1))


def is_bipartite(g: Graph) -> bool:
    return two_colouring(g) is not None


def is_bipartite_with_partition(g: Graph, left=None, right=None) -> bool:
    """With no sides given, whether ``g`` carries a fixed bipartition;
    otherwise whether (left, right) is a valid bipartition of ``g``."""
    if left is None and right is None:
        return g.has_bipartition
    left, right = set(left or ()), set(right or ())
    if left & right or (left | right) != set(g.vertices):
        return False
    return all((u in left) != (w in left) for u, w in g.edges)


def is_complete_bipartite(g: Graph) -> bool:
    """Connected, loop-free and complete between its two colour classes.
    The empty graph and a single loop-free vertex also count."""
    if g.n == 0:
        return True
    if g.loops:
        return False
    if g.n == 1:
        return True
    if not is_connected(g):
        return False
    col = two_colouring(g)
    if col is None:
        return False
    a, b = col
    return g.m == len(a) * len(b)


def is_reflexive_complete(g: Graph) -> bool:
    if g.n == 0:
        return False
    full = frozenset(g.vertices)
    return all(g.neighbours(v) == full for v in g.vertices)


def is_irreflexive_star(g: Graph) -> bool:
    """K_{1,k} for some k >= 0 (a single vertex counts)."""
    if g.loops or not is_connected(g) or g.n == 0:
        return False
    if g.n <= 2:
        return True
    centres = [v for v in g.vertices if g.degree(v) == g.n - 1]
    return len(centres) == 1 and g.m == g.n - 1


def is_dyer_greenhill(g: Graph) -> bool:
    """Every component is complete bipartite or reflexive complete."""
    return all(is_complete_bipartite(c) or is_reflexive_complete(c)
               for c in connected_components(g))
