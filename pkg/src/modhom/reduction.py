"""Automorphism groups, isomorphism testing and order-p reduction.

Three flavors share one engine:

* ``plain`` - all automorphisms;
* ``bip``   - automorphisms preserving the fixed L/R sides;
* ``dist``  - automorphisms of a DistinguishedGraph mapping distinguished
  vertices (edges) bijectively onto distinguished vertices (edges).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Optional, Sequence

from .errors import InstanceTooLarge, MissingBipartition
from .graph import DistinguishedGraph, Graph, LabelledGraph, induced_subgraph

MAX_AUT_VERTICES = 48
MAX_AUT_ELEMENTS = 2_000_000

FLAVORS = ("plain", "bip", "dist")


# ----- colour refinement -----------------------------------------------------

def _renumber(keys: dict) -> dict:
    order = {k: i for i, k in enumerate(sorted(set(keys.values())))}
    return {v: order[k] for v, k in keys.items()}


class _Structure:
    """A graph with vertex labels and edge marks, as used by the search."""

    def __init__(self, g: Graph, labels: Optional[dict] = None, marked=frozenset()):
        self.g = g
        self.verts = g.vertices
        self.labels = {v: repr(labels.get(v)) if labels else "" for v in g.vertices}
        self.marked = {frozenset(e) for e in marked}
        self.nbrs = {v: g.neighbours(v) for v in g.vertices}

    def mark(self, u, w) -> int:
        return 2 if frozenset((u, w)) in self.marked else 1

    def refine(self, col: dict) -> dict:
        col = dict(col)
        ncls = len(set(col.values()))
        while True:
            sig = {v: (col[v], tuple(sorted((col[w], self.mark(v, w)) for w in self.nbrs[v])))
                   for v in self.verts}
            new = _renumber(sig)
            k = len(set(new.values()))
            col = new
            if k == ncls:
                return col
            ncls = k

    def initial(self) -> dict:
        return self.refine(_renumber(self.labels))


def _structure_for(h, flavor: str) -> _Structure:
    if flavor == "dist":
        if not isinstance(h, DistinguishedGraph):
            raise TypeError("dist flavor needs a DistinguishedGraph")
        g = h.graph
        labels = {v: (g.has_loop(v), v in h.dist_vertices) for v in g.vertices}
        return _Structure(g, labels, h.dist_edges)
    g = h.graph if isinstance(h, DistinguishedGraph) else h
    if flavor == "bip":
        if not g.has_bipartition:
            raise MissingBipartition("bip flavor needs a fixed bipartition")
        labels = {v: (g.side(v),) for v in g.vertices}
    elif flavor == "plain":
        labels = {v: (g.has_loop(v),) for v in g.vertices}
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    return _Structure(g, labels)


# ----- automorphism enumeration ---------------------------------------------

def _placement_order(st: _Structure, col: dict) -> list:
    """Connected-first order so that adjacency constraints bite early."""
    order, seen = [], set()
    idx = st.g.index
    for s in sorted(st.verts, key=lambda v: (sum(1 for w in st.verts if col[w] == col[v]),
                                             idx(v))):
        if s in seen:
            continue
        stack = [s]
        seen.add(s)
        while stack:
            v = stack.pop(0)
            order.append(v)
            for w in sorted(st.nbrs[v], key=idx):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return order


def iter_automorphisms(h, flavor: str = "plain", *, reverse: bool = False) -> Iterator[dict]:
    """Yield automorphisms as dicts in a deterministic order.

    ``reverse`` flips the candidate order, giving a second enumeration order.
    """
    st = _structure_for(h, flavor)
    if len(st.verts) > MAX_AUT_VERTICES:
        raise InstanceTooLarge(f"automorphism search limited to {MAX_AUT_VERTICES} vertices")
    col = st.initial()
    order = _placement_order(st, col)
    idx = st.g.index
    cands = {}
    for v in order:
        cs = sorted((w for w in st.verts if col[w] == col[v]), key=idx)
        cands[v] = cs[::-1] if reverse else cs
    earlier = {v: order[:i] for i, v in enumerate(order)}
    phi: dict = {}
    used: set = set()
    count = [0]

    def consistent(v, t) -> bool:
        for u in earlier[v]:
            a = st.mark(v, u) if u in st.nbrs[v] else 0
            b = st.mark(t, phi[u]) if phi[u] in st.nbrs[t] else 0
            if a != b:
                return False
        if (v in st.nbrs[v]) != (t in st.nbrs[t]):
            return False
        if v in st.nbrs[v] and st.mark(v, v) != st.mark(t, t):
            return False
        return True

    def rec(i):
        if i == len(order):
            count[0] += 1
            if count[0] > MAX_AUT_ELEMENTS:
                raise InstanceTooLarge("automorphism group too large to list")
            yield dict(phi)
            return
        v = order[i]
        for t in cands[v]:
            if t in used or not consistent(v, t):
                continue
            phi[v] = t
            used.add(t)
            yield from rec(i + 1)
            used.discard(t)
            del phi[v]

    yield from rec(0)


def permutation_order(perm: dict) -> int:
    seen, order = set(), 1
    for s in perm:
        if s in seen:
            continue
        k, v = 0, s
        while v not in seen:
            seen.add(v)
            v = perm[v]
            k += 1
        order = order * k // gcd(order, k)
    return order


@dataclass
class AutGroup:
    vertices: tuple
    elements: list
    flavor: str = "plain"

    @property
    def order(self) -> int:
        return len(self.elements)

    def identity(self) -> dict:
        return {v: v for v in self.vertices}

    @staticmethod
    def compose(a: dict, b: dict) -> dict:
        """(a ∘ b)(v) = a(b(v))."""
        return {v: a[b[v]] for v in b}

    @staticmethod
    def inverse(a: dict) -> dict:
        return {t: v for v, t in a.items()}

    def element_orders(self) -> list:
        return [permutation_order(e) for e in self.elements]

    def __contains__(self, perm) -> bool:
        return any(e == perm for e in self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def automorphism_group(h, flavor: str = "plain") -> AutGroup:
    g = h.graph if isinstance(h, DistinguishedGraph) else h
    return AutGroup(g.vertices, list(iter_automorphisms(h, flavor)), flavor)


def find_order_p_automorphism(h, p: int, flavor: str = "plain", *,
                              reverse: bool = False) -> Optional[dict]:
    """First automorphism of order exactly p in enumeration order, or None."""
    for perm in iter_automorphisms(h, flavor, reverse=reverse):
        if permutation_order(perm) == p:
            return perm
    return None


def has_order_p_automorphism(h, p: int, flavor: str = "plain") -> bool:
    return find_order_p_automorphism(h, p, flavor) is not None


def fixed_subgraph(h, perm: dict):
    """H^ρ: the subgraph induced by the fixed points (dist sets restricted)."""
    fixed = [v for v, t in perm.items() if v == t]
    if isinstance(h, DistinguishedGraph):
        g = induced_subgraph(h.graph, fixed)
        keep = set(fixed)
        return DistinguishedGraph(g, [v for v in h.dist_vertices if v in keep],
                                  [e for e in h.dist_edges if e[0] in keep and e[1] in keep])
    return induced_subgraph(h, fixed)


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)  # (automorphism, fixed subgraph)
    result: object = None
    p: int = 0
    flavor: str = "plain"

    @property
    def is_empty(self) -> bool:
        g = self.result.graph if isinstance(self.result, DistinguishedGraph) else self.result
        return g.n == 0


def reduce(h, p: int, flavor: str = "plain", *, reverse: bool = False) -> ReductionTrace:
    """Iterate H -> H^ρ for order-p automorphisms ρ until none is left."""
    trace = ReductionTrace(p=p, flavor=flavor)
    cur = h
    while True:
        rho = find_order_p_automorphism(cur, p, flavor, reverse=reverse)
        if rho is None:
            break
        cur = fixed_subgraph(cur, rho)
        trace.steps.append((rho, cur))
    trace.result = cur
    return trace


def reduced_form(h, p: int, flavor: str = "plain"):
    return reduce(h, p, flavor).result


# ----- orbits ----------------------------------------------------------------

def orbit(h, tup: Sequence, flavor: str = "plain") -> set:
    tup = tuple(tup)
    return {tuple(a[v] for v in tup) for a in iter_automorphisms(h, flavor)}


def stabilizer(h, tup: Sequence, flavor: str = "plain") -> AutGroup:
    tup = tuple(tup)
    g = h.graph if isinstance(h, DistinguishedGraph) else h
    els = [a for a in iter_automorphisms(h, flavor) if all(a[v] == v for v in tup)]
    return AutGroup(g.vertices, els, flavor)


# ----- canonical forms -------------------------------------------------------

def _certificate(st: _Structure, order: list) -> tuple:
    pos = {v: i for i, v in enumerate(order)}
    labels = tuple(st.labels[v] for v in order)
    rows = tuple(tuple(sorted((pos[w], st.mark(v, w)) for w in st.nbrs[v] if pos[w] >= pos[v]))
                 for v in order)
    return (labels, rows)


def _canon_search(st: _Structure, col: dict):
    col = st.refine(col)
    classes = {}
    for v in st.verts:
        classes.setdefault(col[v], []).append(v)
    cell = None
    for c in sorted(classes):
        if len(classes[c]) > 1:
            cell = classes[c]
            break
    if cell is None:
        return _certificate(st, sorted(st.verts, key=lambda v: col[v]))
    best = None
    for v in cell:
        keyed = {w: (col[w], 0 if w == v else 1) for w in st.verts}
        cert = _canon_search(st, _renumber(keyed))
        if best is None or cert < best:
            best = cert
    return best


def _canonical_structure(st: _Structure) -> tuple:
    from .graph import component_vertex_sets
    parts = []
    for comp in component_vertex_sets(st.g):
        sub = _Structure(induced_subgraph(st.g, comp))
        sub.labels = {v: st.labels[v] for v in comp}
        sub.marked = st.marked
        parts.append(_canon_search(sub, sub.initial()))
    return tuple(sorted(parts))


def canonical_form(h, flavor: str = "plain") -> tuple:
    """A key equal for two inputs iff they are isomorphic in the given flavor.

    Accepts Graph, DistinguishedGraph (``flavor="dist"``) and LabelledGraph
    (pins and the distinguished tuple are part of the structure).
    """
    if isinstance(h, LabelledGraph):
        g = h.graph
        pos = {v: i for i, v in enumerate(h.distinguished)}
        labels = {v: (g.has_loop(v), g.side(v) if flavor == "bip" else "",
                      repr(h.pins.get(v)), pos.get(v, -1)) for v in g.vertices}
        return (h.graph.n, _canonical_structure(_Structure(g, labels)))
    st = _structure_for(h, flavor)
    return (st.g.n, _canonical_structure(st))


def is_isomorphic(a, b, flavor: str = "plain") -> bool:
    return canonical_form(a, flavor) == canonical_form(b, flavor)
