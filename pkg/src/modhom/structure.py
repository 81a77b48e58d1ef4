"""Structural detectors on bipartite targets.

All detectors are deterministic: candidates are scanned in vertex order and
ties go to the first hit.  Detectors that claim a structure re-check its
defining conditions before returning it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .errors import GraphError, NotForbiddenFree, UnknownVertex
from .graph import (LEFT, RIGHT, Graph, LabelledGraph, blocks, common_neighbourhood,
                    component_vertex_sets, induced_subgraph, is_complete_bipartite,
                    two_ball, two_colouring)
from .families import domino, k33_minus_edge
from .homs import count_walks
from .reduction import canonical_form, is_isomorphic, reduced_form

DEFAULT_SUBSET_BUDGET = 3
MAX_CYCLE_VERTICES = 12


# ----- helpers ---------------------------------------------------------------

def with_sides(h: Graph) -> Graph:
    """``h`` itself if it carries sides, else the first 2-colouring."""
    if h.has_bipartition:
        return h
    col = two_colouring(h)
    if col is None:
        raise GraphError("graph is not bipartite")
    return h.with_bipartition(col)


def _vsort(h: Graph, vs) -> tuple:
    return tuple(sorted(vs, key=h.index))


def _bip_reduced(b: Graph, p: int) -> Graph:
    return reduced_form(with_sides(b), p, "bip")


def non_complete_components(g: Graph) -> list:
    """Components that are not complete bipartite, in vertex order."""
    out = []
    for comp in component_vertex_sets(g):
        c = induced_subgraph(g, comp)
        if not is_complete_bipartite(c):
            out.append(c)
    return out


def reduces_to_complete(b: Graph, p: int) -> bool:
    """Whether the partition-wise reduced form is a collection of complete
    bipartite graphs."""
    return not non_complete_components(_bip_reduced(b, p))


def has_radius_at_most_two(h: Graph) -> Optional[object]:
    """A vertex v with B_2(v) = H, or None."""
    for v in h.vertices:
        if len(two_ball(h, v).vertices) == h.n:
            return v
    return None


# ----- forbidden induced subgraphs ------------------------------------------

_PATTERNS = {"k33-minus-edge": k33_minus_edge().forget_bipartition(),
             "domino": domino().forget_bipartition()}


@dataclass
class ForbiddenReport:
    free: bool
    witness: Optional[tuple] = None
    pattern: Optional[str] = None

    def __bool__(self) -> bool:
        return self.free

    def to_json(self) -> dict:
        return {"free": self.free, "witness": list(self.witness) if self.witness else None,
                "pattern": self.pattern}


def _match_pattern(sub: Graph) -> Optional[str]:
    m = sub.m
    for name, pat in _PATTERNS.items():
        if m == pat.m and is_isomorphic(sub, pat):
            return name
    return None


def is_forbidden_free(h: Graph) -> ForbiddenReport:
    """Induced search for K_{3,3} minus an edge and the domino."""
    if h.loops:
        raise GraphError("forbidden-subgraph test needs a loop-free graph")
    verts = h.vertices
    if len(verts) < 6:
        return ForbiddenReport(True)
    masks = h.adjacency_masks()
    for combo in combinations(range(len(verts)), 6):
        sel = 0
        for i in combo:
            sel |= 1 << i
        m = sum(bin(masks[i] & sel).count("1") for i in combo) // 2
        if m not in (7, 8):
            continue
        sub = induced_subgraph(h, [verts[i] for i in combo])
        name = _match_pattern(sub)
        if name is not None:
            return ForbiddenReport(False, tuple(verts[i] for i in combo), name)
    return ForbiddenReport(True)


# ----- splits ------------------------------------------------------------------

@dataclass
class SplitClass:
    representative: Graph
    count: int
    members: list
    block: Graph


@dataclass
class Split:
    center: object
    classes: list = field(default_factory=list)

    @property
    def n_components(self) -> int:
        return sum(c.count for c in self.classes)

    def components(self) -> list:
        return [u for c in self.classes for u in c.members]

    def to_json(self) -> dict:
        return {"center": self.center,
                "classes": [{"vertices": list(c.representative.vertices), "count": c.count,
                             "block": list(c.block.vertices)} for c in self.classes]}


def _block_containing(u: Graph, v) -> Graph:
    for b in blocks(u):
        if v in b and (b.n > 1 or u.n == 1):
            return b
    raise GraphError(f"no block of the component contains {v!r}")


def split_components(ball: Graph, v) -> list:
    """Components of ``ball`` minus v, each rejoined with v."""
    rest = induced_subgraph(ball, [w for w in ball.vertices if w != v])
    return [induced_subgraph(ball, list(c) + [v]) for c in component_vertex_sets(rest)]


def split(h: Graph, v) -> Split:
    """Split of ``h`` at v: components of H - v rejoined with v, grouped by
    isomorphism of the rooted graph (U, v)."""
    h.check_vertex(v)
    out = Split(v)
    keys = {}
    for u in split_components(h, v):
        key = canonical_form(LabelledGraph(u, {}, (v,)))
        if key in keys:
            cls = out.classes[keys[key]]
            cls.count += 1
            cls.members.append(u)
        else:
            keys[key] = len(out.classes)
            out.classes.append(SplitClass(u, 1, [u], _block_containing(u, v)))
    return out


def split_at(h: Graph, v) -> Split:
    """The split of B_2(v) at v."""
    if v not in h:
        raise UnknownVertex(f"unknown vertex {v!r}")
    return split(two_ball(h, v), v)


def is_forbidden_free_by_splits(h: Graph) -> bool:
    """Every block through the centre of every split component of every
    2-ball is complete bipartite."""
    for v in h.vertices:
        if not h.neighbours(v):
            continue
        for cls in split_at(h, v).classes:
            if not is_complete_bipartite(cls.block):
                return False
    return True


# ----- complete cores ------------------------------------------------------------

@dataclass
class CompleteCore:
    host: tuple
    core: Graph
    left: tuple
    right: tuple
    component: Graph

    @property
    def shape(self) -> tuple:
        return (len(self.left), len(self.right))

    def to_json(self) -> dict:
        return {"host": list(self.host), "left": list(self.left), "right": list(self.right),
                "shape": list(self.shape)}


def component_of(h: Graph, v, u) -> Graph:
    """U^{v,u}: the split component of B_2(v) at v that contains u."""
    ball = two_ball(h, v)
    for comp in split_components(ball, v):
        if u in comp:
            return comp
    raise GraphError(f"{u!r} is not in the 2-ball of {v!r}")


def complete_core(h: Graph, v, u) -> CompleteCore:
    """K^{v,u}, with v on the left side of the core."""
    if not h.has_edge(v, u) or u == v:
        raise GraphError(f"({v!r}, {u!r}) is not an edge")
    comp = component_of(h, v, u)
    if len(h.neighbours(v) & set(comp.vertices)) > 1:
        core = _block_containing(comp, v)
    else:
        core = comp
    if not is_complete_bipartite(core):
        raise NotForbiddenFree(f"core at ({v!r}, {u!r}) is not complete bipartite")
    col = {v: 0}
    queue = [v]
    while queue:
        x = queue.pop()
        for w in core.neighbours(x):
            if w not in col:
                col[w] = 1 - col[x]
                queue.append(w)
    left = _vsort(h, [w for w in core.vertices if col[w] == 0])
    right = _vsort(h, [w for w in core.vertices if col[w] == 1])
    return CompleteCore((v, u), core, left, right, comp)


def is_p_square_free(h: Graph, p: int):
    """(True, None) or (False, witness core) where the witness has a right
    side of size divisible by p."""
    for u, w in h.edges:
        for a, b in ((u, w), (w, u)):
            core = complete_core(h, a, b)
            if core.shape[1] % p == 0:
                return False, core
    return True, None


# ----- 4-vertex paths ----------------------------------------------------------

def twin_classes(h: Graph) -> list:
    """Vertices grouped by identical neighbourhoods, in vertex order."""
    classes = {}
    for v in h.vertices:
        classes.setdefault(h.neighbours(v), []).append(v)
    return [tuple(c) for c in classes.values()]


def four_vertex_path_groups(h: Graph) -> Optional[tuple]:
    """The four twin classes (x1, x2, x3, x4) if ``h`` is some P(a1,a2,a3,a4)."""
    if h.loops or h.n < 4:
        return None
    classes = twin_classes(h)
    if len(classes) != 4:
        return None
    where = {v: i for i, c in enumerate(classes) for v in c}
    qadj = [set() for _ in classes]
    for u, w in h.edges:
        qadj[where[u]].add(where[w])
        qadj[where[w]].add(where[u])
    if any(i in a for i, a in enumerate(qadj)):
        return None
    if sorted(len(a) for a in qadj) != [1, 1, 2, 2]:
        return None
    ends = [i for i, a in enumerate(qadj) if len(a) == 1]
    start = min(ends, key=lambda i: h.index(classes[i][0]))
    order, prev = [start], None
    while len(order) < 4:
        nxt = [j for j in qadj[order[-1]] if j != prev]
        if len(nxt) != 1:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return tuple(classes[i] for i in order)


# ----- hard vertices ---------------------------------------------------------

@dataclass
class HardVertex:
    vertex: object
    subset: tuple
    ball: Graph
    reduced: Graph

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "subset": list(self.subset),
                "ball": list(self.ball.vertices), "reduced": list(self.reduced.vertices)}


def intersected_ball(h: Graph, v, subset: Sequence) -> Graph:
    keep = set(two_ball(h, v).vertices)
    for u in subset:
        keep &= set(two_ball(h, u).vertices)
    return induced_subgraph(h, keep)


def iter_hard_vertices(h: Graph, p: int, max_subset: int = DEFAULT_SUBSET_BUDGET):
    h = with_sides(h)
    for v in h.vertices:
        others = [w for w in two_ball(h, v).vertices if w != v]
        for k in range(0, max_subset + 1):
            for sub in combinations(others, k):
                b = intersected_ball(h, v, sub)
                red = _bip_reduced(b, p)
                if non_complete_components(red):
                    yield HardVertex(v, sub, b, red)


def find_hard_vertex(h: Graph, p: int, max_subset: int = DEFAULT_SUBSET_BUDGET
                     ) -> Optional[HardVertex]:
    """First (v, U, B) with B = ∩ B_2 over U ∪ {v} reducing to a graph with a
    non-complete-bipartite component; None if none within the budget."""
    return next(iter_hard_vertices(h, p, max_subset), None)


# ----- generalized paths and cycles ----------------------------------------------

@dataclass
class GeneralizedPath:
    kind: str
    spine: tuple
    groups: tuple
    p: int
    terminal_case: Optional[str] = None
    partially_hard: Optional[bool] = None

    @property
    def multiplicities(self) -> tuple:
        return tuple(len(g) for g in self.groups)

    @property
    def length(self) -> int:
        return len(self.spine) - 1 if self.kind != "hardness-cycle" else len(self.spine)

    def vertices(self) -> set:
        return {v for g in self.groups for v in g}

    def reversed(self) -> "GeneralizedPath":
        gp = GeneralizedPath(self.kind, self.spine[::-1], self.groups[::-1], self.p)
        return gp

    def to_json(self) -> dict:
        doc = {"kind": self.kind, "spine": list(self.spine),
               "groups": [list(g) for g in self.groups],
               "multiplicities": list(self.multiplicities), "p": self.p}
        if self.terminal_case is not None:
            doc["terminal_case"] = self.terminal_case
        if self.partially_hard is not None:
            doc["partially_hard"] = self.partially_hard
        return doc


def _induced_cycles(h: Graph, min_len: int):
    """Induced cycles as vertex tuples, each listed once starting at its
    smallest vertex and with the smaller second vertex first."""
    idx = h.index
    for s in h.vertices:
        si = idx(s)
        ns = h.neighbours(s)

        def extend(path, onpath):
            last = path[-1]
            if len(path) >= 3 and last in ns:
                # the closing edge is forced; any other continuation is a chord
                if len(path) >= min_len and idx(path[1]) < idx(last):
                    yield tuple(path)
                return
            for w in sorted(h.neighbours(last), key=idx):
                if idx(w) <= si or w in onpath:
                    continue
                if any(w in h.neighbours(x) for x in path[1:-1]):
                    continue
                path.append(w)
                onpath.add(w)
                yield from extend(path, onpath)
                path.pop()
                onpath.discard(w)

        yield from extend([s], {s})


def check_hardness_cycle(h: Graph, groups: Sequence, p: int) -> bool:
    """Common-neighbourhood and multiplicity conditions for a generalized
    cycle given by its vertex groups."""
    k = len(groups)
    if k < 6:
        return False
    for i in range(k):
        if len(groups[(i + 1) % k]) % p == 0:
            return False
        target = set(groups[(i + 1) % k])
        for x in groups[i]:
            for y in groups[(i + 2) % k]:
                if set(h.neighbours(x) & h.neighbours(y)) != target:
                    return False
    allv = [v for g in groups for v in g]
    if len(set(allv)) != len(allv):
        return False
    pos = {v: i for i, g in enumerate(groups) for v in g}
    for v in allv:
        for w in h.neighbours(v):
            if w in pos and (pos[w] - pos[v]) % k not in (1, k - 1):
                return False
    for i in range(k):
        for x in groups[i]:
            for y in groups[(i + 1) % k]:
                if not h.has_edge(x, y):
                    return False
    return True


def find_hardness_cycle(h: Graph, p: int, max_vertices: int = MAX_CYCLE_VERTICES
                        ) -> Optional[GeneralizedPath]:
    """First generalized hardness inducing cycle of length >= 6."""
    if h.n > max_vertices:
        return None
    seen = set()
    for cyc in _induced_cycles(h, 6):
        k = len(cyc)
        groups = []
        for i in range(k):
            c = common_neighbourhood(h, [cyc[i - 1], cyc[(i + 1) % k]])
            groups.append(_vsort(h, c))
        key = frozenset(frozenset(g) for g in groups)
        if key in seen:
            continue
        seen.add(key)
        if check_hardness_cycle(h, groups, p):
            return GeneralizedPath("hardness-cycle", tuple(cyc), tuple(groups), p)
    return None


def check_hardness_path(h: Graph, spine: Sequence, groups: Sequence, p: int) -> bool:
    """Conditions of a generalized hardness path given as spine plus groups
    (singletons at even positions)."""
    ell = len(spine) - 1
    if ell < 2 or ell % 2:
        return False
    for i in range(1, ell, 2):
        core = complete_core(h, spine[i - 1], spine[i])
        a, b = core.shape
        if b % p == 0 or a % p != 1 % p:
            return False
        if set(core.right) != set(groups[i]):
            return False
        if i <= ell - 3 and h.degree(spine[i + 1]) % p != b % p:
            return False
    allv = [v for g in groups for v in g]
    if len(set(allv)) != len(allv):
        return False
    pos = {v: i for i, g in enumerate(groups) for v in g}
    for v in allv:
        for w in h.neighbours(v):
            if w in pos and abs(pos[w] - pos[v]) != 1:
                return False
    for i in range(ell):
        for x in groups[i]:
            for y in groups[i + 1]:
                if not h.has_edge(x, y):
                    return False
    return True


def _path_extensions(h: Graph, p: int, spine: list, groups: list, budget: list):
    """Depth-first enumeration of valid extensions; yields (spine, groups)."""
    yield list(spine), list(groups)
    if budget[0] <= 0:
        return
    budget[0] -= 1
    last = spine[-1]
    used = {v for g in groups for v in g}
    if len(spine) >= 3 and h.degree(last) % p != len(groups[-2]) % p:
        return
    for u in sorted(h.neighbours(last), key=h.index):
        if u in used:
            continue
        try:
            core = complete_core(h, last, u)
        except NotForbiddenFree:
            continue
        a, b = core.shape
        if b % p == 0 or a % p != 1 % p:
            continue
        copies = core.right
        if any(c in used for c in copies):
            continue
        # the path stays induced: copies see only `last` among used vertices
        if any(set(h.neighbours(c)) & used - {last} for c in copies):
            continue
        if u != copies[0]:
            continue
        for nxt in core.left:
            if nxt == last or nxt in used:
                continue
            if set(h.neighbours(nxt)) & (used | set(copies)) != set(copies):
                continue
            spine.extend([u, nxt])
            groups.extend([copies, (nxt,)])
            yield from _path_extensions(h, p, spine, groups, budget)
            del spine[-2:]
            del groups[-2:]


def _terminal_case(h: Graph, path: GeneralizedPath, p: int) -> str:
    end = path.spine[-1]
    b = len(path.groups[-2])
    if h.degree(end) % p != b % p:
        return "ii"
    if neighbourhood_subset(h, end, p) is not None:
        return "i"
    return "iii"


def neighbourhood_subset(h: Graph, v, p: int, max_size: int = DEFAULT_SUBSET_BUDGET,
                         need_unit_size: bool = True):
    """First U ⊆ Γ(v) with |∩Γ(U)| ≢ 1 (and |U| ≢ 0) mod p."""
    nb = _vsort(h, h.neighbours(v))
    for k in range(1, min(max_size, len(nb)) + 1):
        if need_unit_size and k % p == 0:
            continue
        for sub in combinations(nb, k):
            if len(common_neighbourhood(h, sub)) % p != 1 % p:
                return sub
    return None


def find_generalized_hardness_path(h: Graph, p: int, start=None, *,
                                   node_budget: int = 20000) -> Optional[GeneralizedPath]:
    """Longest generalized hardness path (from ``start`` or any vertex),
    with its terminal classified as case i, ii or iii."""
    h = with_sides(h)
    starts = [start] if start is not None else list(h.vertices)
    best = None
    for s in starts:
        h.check_vertex(s)
        budget = [node_budget]
        for spine, groups in _path_extensions(h, p, [s], [(s,)], budget):
            if len(spine) < 3:
                continue
            if best is None or len(spine) > len(best[0]):
                best = (tuple(spine), tuple(groups))
    if best is None:
        return None
    gp = GeneralizedPath("hardness-path", best[0], best[1], p)
    if not check_hardness_path(h, gp.spine, gp.groups, p):
        raise GraphError("internal: detected hardness path fails re-verification")
    gp.terminal_case = _terminal_case(h, gp, p)
    return gp


def iter_generalized_hardness_paths(h: Graph, p: int, *, node_budget: int = 20000):
    """All maximal-by-extension generalized hardness paths, in search order."""
    h = with_sides(h)
    for s in h.vertices:
        budget = [node_budget]
        for spine, groups in _path_extensions(h, p, [s], [(s,)], budget):
            if len(spine) >= 3:
                gp = GeneralizedPath("hardness-path", tuple(spine), tuple(groups), p)
                gp.terminal_case = _terminal_case(h, gp, p)
                yield gp


def restricted_walks(h: Graph, path: GeneralizedPath, u, w, length: int, first: int) -> int:
    """Walks u -> w of the given length whose i-th inner vertex lies in the
    common neighbourhood of group ``first + i - 1``."""
    restrict = [common_neighbourhood(h, path.groups[first + i]) for i in range(length - 1)]
    return count_walks(h, u, w, length, restrict).value


def walks_stay_on_path(h: Graph, path: GeneralizedPath) -> bool:
    """No restricted v_0 -> v_l walk of length l+2 visits two vertices
    outside the path."""
    ell = len(path.spine) - 1
    inside = path.vertices()
    allowed = [common_neighbourhood(h, g) for g in path.groups]

    def rec(x, step, outside):
        if step == ell + 1:
            return path.spine[-1] in h.neighbours(x) or True
        for y in h.neighbours(x):
            if y not in allowed[step]:
                continue
            o = outside + (y not in inside)
            if o > 1:
                # only a violation if the walk can still be completed
                if _completes(y, step):
                    return False
                continue
            if not rec(y, step + 1, o):
                return False
        return True

    def _completes(y, step):
        cur = {y}
        for s in range(step + 1, ell + 1):
            cur = {z for x in cur for z in h.neighbours(x) if z in allowed[s]}
        return any(path.spine[-1] in h.neighbours(x) for x in cur)

    first = path.spine[0]
    for y in h.neighbours(first):
        if y in allowed[0]:
            if not rec(y, 1, int(y not in inside)):
                return False
    return True


# ----- dead ends -------------------------------------------------------------------

@dataclass
class DeadEnd:
    vertex: object
    suitable_no_exit: bool
    suitable_separated: bool
    exits: tuple

    @property
    def suitable(self) -> bool:
        return self.suitable_no_exit or self.suitable_separated

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "suitable_no_exit": self.suitable_no_exit,
                "suitable_separated": self.suitable_separated, "exits": list(self.exits)}


def find_dead_ends(h: Graph) -> list:
    """Every dead end with both suitability flags and its exit set U_v."""
    out = []
    for v in h.vertices:
        ballg = two_ball(h, v)
        ball = set(ballg.vertices)
        if not ball:
            out.append(DeadEnd(v, True, False, ()))
            continue
        comps = split_components(ballg, v)
        exits_per = []
        for comp in comps:
            ex = [w for w in comp.vertices if w != v and w not in h.neighbours(v)
                  and not set(h.neighbours(w)) <= ball]
            if ex:
                exits_per.append(_vsort(h, ex))
        if len(exits_per) > 1:
            continue
        if not exits_per:
            out.append(DeadEnd(v, True, False, ()))
            continue
        ex = exits_per[0]
        nv = set(h.neighbours(v))
        separated = not any(set(h.neighbours(a) & h.neighbours(b)) <= nv
                            for a, b in combinations(ex, 2))
        out.append(DeadEnd(v, False, separated, ex))
    return out


# ----- mosaic paths ----------------------------------------------------------------

def _mosaic_step_ok(h: Graph, p: int, prev, cur, nxt, hard_budget: int) -> Optional[CompleteCore]:
    try:
        core = complete_core(h, cur, nxt)
    except NotForbiddenFree:
        return None
    a, b = core.shape
    if a == 0 or b == 0 or b % p:
        return None
    if prev is not None:
        ball = two_ball(h, cur)
        comps = split_components(ball, cur)
        cp = next(c for c in comps if prev in c)
        if nxt in cp:
            return None
    if find_hard_vertex(core.component, p, hard_budget) is not None:
        return None
    return core


def partially_hard_start(h: Graph, x0, x1, p: int) -> bool:
    """Delete p-1 leaves at x1 from H[B_2(x0) ∩ B_2(x1)] and test whether the
    reduced result has a non-complete-bipartite component."""
    h = with_sides(h)
    b = intersected_ball(h, x0, [x1])
    leaves = [w for w in _vsort(h, b.neighbours(x1)) if b.degree(w) == 1]
    if len(leaves) < p - 1:
        return False
    b = induced_subgraph(b, [w for w in b.vertices if w not in set(leaves[:p - 1])])
    return not reduces_to_complete(b, p)


def find_mosaic_path(h: Graph, p: int, *, hard_budget: int = 1) -> Optional[GeneralizedPath]:
    """Longest greedy p-mosaic path over all starting edges, with the
    partially-hard flag of its leading core."""
    h = with_sides(h)
    best = None
    for x0 in h.vertices:
        for x1 in _vsort(h, h.neighbours(x0)):
            if _mosaic_step_ok(h, p, None, x0, x1, hard_budget) is None:
                continue
            q = [x0, x1]
            while True:
                ext = None
                for y in _vsort(h, h.neighbours(q[-1])):
                    if y in q:
                        continue
                    if _mosaic_step_ok(h, p, q[-2], q[-1], y, hard_budget) is not None:
                        ext = y
                        break
                if ext is None:
                    break
                q.append(ext)
            if best is None or len(q) > len(best):
                best = q
    if best is None:
        return None
    gp = GeneralizedPath("mosaic-path", tuple(best), tuple((v,) for v in best), p)
    gp.partially_hard = partially_hard_start(h, best[0], best[1], p)
    return gp
