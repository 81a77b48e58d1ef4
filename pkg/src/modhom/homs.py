"""Brute-force homomorphism counting: the ground-truth oracle.

All counts are exact Python integers; a residue is attached on request.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import kernels
from .errors import GraphError, InstanceTooLarge, MissingBipartition, UnknownVertex
from .graph import LEFT, Graph, LabelledGraph, as_labelled

DEFAULT_BUDGET = 10 ** 9


@dataclass(frozen=True)
class HomCount:
    value: int
    modulus: Optional[int] = None

    @property
    def residue(self) -> Optional[int]:
        return None if self.modulus is None else self.value % self.modulus

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def result(self) -> int:
        """Residue when a modulus is attached, else the exact value."""
        return self.value if self.modulus is None else self.value % self.modulus


def _wrap(value: int, p) -> HomCount:
    return HomCount(int(value), p)


def _fixed_map(lab: LabelledGraph, target: Graph, targets_for_distinguished) -> dict:
    targets = tuple(targets_for_distinguished)
    if len(targets) != len(lab.distinguished):
        raise GraphError(f"{len(lab.distinguished)} distinguished vertices but "
                         f"{len(targets)} targets")
    fixed = {}
    for v, t in list(lab.pins.items()) + list(zip(lab.distinguished, targets)):
        if t not in target:
            raise UnknownVertex(f"pin target {t!r} is not a vertex of the target")
        fixed[v] = t
    return fixed


class _Setup:
    """Domains after folding pins, loops and sides into bitmasks."""

    def __init__(self, src: Graph, tgt: Graph, fixed: dict, bip: bool, injective: bool,
                 budget):
        self.src, self.tgt = src, tgt
        self.injective = injective
        self.adj = tgt.adjacency_masks()
        tidx = tgt.index
        full = (1 << tgt.n) - 1
        loopmask = 0
        for v in tgt.loops:
            loopmask |= 1 << tidx(v)
        side_mask = {}
        if bip:
            for s in ("L", "R"):
                side_mask[s] = sum(1 << tidx(v) for v in tgt.vertices if tgt.side(v) == s)
        dom = {}
        for v in src.vertices:
            d = side_mask[src.side(v)] if bip else full
            if src.has_loop(v):
                d &= loopmask
            dom[v] = d
        self.zero = False
        for v, t in fixed.items():
            bit = 1 << tidx(t)
            if not dom[v] & bit:
                self.zero = True
            dom[v] = bit
        for v, t in fixed.items():
            for w in src.neighbours(v):
                if w in fixed and not self.adj[tidx(t)] & (1 << tidx(fixed[w])):
                    self.zero = True
        if injective:
            tv = list(fixed.values())
            if len(set(tv)) != len(tv):
                self.zero = True
            used = sum(1 << tidx(t) for t in set(tv))
        self.free = [v for v in src.vertices if v not in fixed]
        for v in self.free:
            for w in src.neighbours(v):
                if w in fixed:
                    dom[v] &= self.adj[tidx(fixed[w])]
            if injective:
                dom[v] &= ~used
            if dom[v] == 0:
                self.zero = True
        self.dom = dom
        self.fixed = fixed
        if budget is not None and tgt.n ** len(self.free) > budget:
            raise InstanceTooLarge(
                f"{tgt.n}^{len(self.free)} assignments exceed the budget {budget}")

    def _order(self, verts):
        """Greedy order: most placed neighbours first, then smallest domain."""
        src, dom = self.src, self.dom
        pos = {}
        order = []
        rest = list(verts)
        while rest:
            best = None
            for v in rest:
                placed = sum(1 for w in src.neighbours(v) if w in pos)
                key = (-placed, bin(dom[v]).count("1"), src.index(v))
                if best is None or key < best[0]:
                    best = (key, v)
            v = best[1]
            pos[v] = len(order)
            order.append(v)
            rest.remove(v)
        back = [[pos[w] for w in self.src.neighbours(v) if w in pos and pos[w] < pos[v]]
                for v in order]
        return order, back

    def _free_components(self):
        free = set(self.free)
        seen = set()
        comps = []
        for s in self.free:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            k = 0
            while k < len(comp):
                for w in self.src.neighbours(comp[k]):
                    if w in free and w not in seen:
                        seen.add(w)
                        comp.append(w)
                k += 1
            comps.append(comp)
        return comps

    def count(self) -> int:
        if self.zero:
            return 0
        if self.injective:
            order, back = self._order(self.free)
            return kernels.count_assignments([self.dom[v] for v in order], back,
                                             self.adj, True)
        total = 1
        for comp in self._free_components():
            order, back = self._order(comp)
            c = kernels.count_assignments([self.dom[v] for v in order], back, self.adj)
            if c == 0:
                return 0
            total *= c
        return total


def _count(source, target, targets_for_distinguished, bip, injective, budget) -> int:
    lab = as_labelled(source)
    if bip and not (lab.graph.has_bipartition and target.has_bipartition):
        raise MissingBipartition("bipartite counting needs fixed bipartitions on both graphs")
    fixed = _fixed_map(lab, target, targets_for_distinguished)
    return _Setup(lab.graph, target, fixed, bip, injective, budget).count()


def count_homs(source, target: Graph, targets_for_distinguished: Sequence = (),
               p: Optional[int] = None, *, budget=DEFAULT_BUDGET) -> HomCount:
    """hom((G, pins, ȳ), (H, x̄)).

    ``source`` is a Graph or LabelledGraph; its distinguished vertices are sent
    to ``targets_for_distinguished`` in order.  ``budget=None`` disables the
    size guard.
    """
    return _wrap(_count(source, target, targets_for_distinguished, False, False, budget), p)


def count_bip_homs(source, target: Graph, targets_for_distinguished: Sequence = (),
                   p: Optional[int] = None, *, budget=DEFAULT_BUDGET) -> HomCount:
    """Partition-preserving count: L-vertices go to L, R-vertices to R."""
    return _wrap(_count(source, target, targets_for_distinguished, True, False, budget), p)


def count_inj(g, h: Graph, p=None, *, bip=False, budget=DEFAULT_BUDGET) -> HomCount:
    return _wrap(_count(g, h, (), bip, True, budget), p)


def count_aut(h: Graph, p=None, *, bip=False, budget=DEFAULT_BUDGET) -> HomCount:
    """|Aut(H)|: injective endomorphisms of a finite graph are automorphisms."""
    return _wrap(_count(h, h, (), bip, True, budget), p)


def iter_homs(source, target: Graph, targets_for_distinguished: Sequence = (), *,
              bip=False, injective=False, budget=DEFAULT_BUDGET) -> Iterator[dict]:
    """Yield homomorphisms as dicts, in lexicographic order of
    (φ(v1), φ(v2), ...) over the target's vertex order."""
    lab = as_labelled(source)
    if bip and not (lab.graph.has_bipartition and target.has_bipartition):
        raise MissingBipartition("bipartite counting needs fixed bipartitions on both graphs")
    fixed = _fixed_map(lab, target, targets_for_distinguished)
    st = _Setup(lab.graph, target, fixed, bip, injective, budget)
    if st.zero:
        return
    src = lab.graph
    order = list(src.vertices)
    pos = {v: i for i, v in enumerate(order)}
    back = [[pos[w] for w in src.neighbours(v) if pos[w] < pos[v]] for v in order]
    doms = [st.dom[v] for v in order]
    tv = target.vertices
    for a in kernels.iter_assignments(doms, back, st.adj, injective):
        yield {v: tv[a[i]] for i, v in enumerate(order)}


def count_surj(g, h: Graph, p=None, *, bip=False, budget=DEFAULT_BUDGET) -> HomCount:
    """Homomorphisms surjective on vertices and on edges."""
    need_v = set(h.vertices)
    need_e = {frozenset(e) for e in h.edges}
    src = as_labelled(g).graph
    if src.n < h.n or src.m < h.m:
        return _wrap(0, p)
    sedges = src.edges
    total = 0
    for phi in iter_homs(g, h, bip=bip, budget=budget):
        if set(phi.values()) != need_v:
            continue
        if {frozenset((phi[u], phi[w])) for u, w in sedges} == need_e:
            total += 1
    return _wrap(total, p)


def count_walks(h: Graph, u, v, length: int, restrict: Optional[Sequence] = None,
                p: Optional[int] = None) -> HomCount:
    """Number of walks u = w0, w1, ..., w_len = v.

    With ``restrict``, a sequence of ``length - 1`` vertex sets, the i-th inner
    vertex w_i must lie in ``restrict[i-1]``.
    """
    h.check_vertex(u)
    h.check_vertex(v)
    if length < 0:
        raise ValueError("walk length must be nonnegative")
    if restrict is not None and len(restrict) != max(length - 1, 0):
        raise ValueError(f"restriction needs {max(length - 1, 0)} sets")
    if length == 0:
        return _wrap(int(u == v), p)
    cur = {u: 1}
    for step in range(1, length + 1):
        allowed = None
        if step < length and restrict is not None:
            allowed = set(restrict[step - 1])
        nxt = {}
        for x, c in cur.items():
            for y in h.neighbours(x):
                if step == length and y != v:
                    continue
                if allowed is not None and y not in allowed:
                    continue
                nxt[y] = nxt.get(y, 0) + c
        cur = nxt
    return _wrap(cur.get(v, 0), p)


def walk_matrix_power(h: Graph, length: int) -> list:
    """A^length as nested lists of exact integers (repeated squaring)."""
    n = h.n
    a = h.adjacency_matrix()

    def mul(x, y):
        return [[sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)]
                for i in range(n)]

    result = [[int(i == j) for j in range(n)] for i in range(n)]
    base = a
    e = length
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result
