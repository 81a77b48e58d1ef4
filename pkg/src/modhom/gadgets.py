"""Hardness gadgets, (B,p)-gadgets and the reductions they support.

Nothing here is trusted: every constructor hands its output to a verifier
that recomputes the selected sets by brute-force counting.  Counts are taken
at full amplification (p-1 glued copies), so membership is a 0/1 question.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .errors import (AssertionReport, BadCounts, ConditionFailure, GraphError,
                     InstanceTooLarge, MissingBipartition, ModhomError, NotACycleGadget,
                     NotForbiddenFree, OutOfFragment, VariantMismatch)
from .graph import (LEFT, RIGHT, Graph, LabelledGraph, common_neighbourhood,
                    component_vertex_sets, graph_to_dict, induced_subgraph,
                    is_complete_bipartite, two_ball, two_colouring)
from .homs import count_bip_homs, count_homs, count_walks
from .reduction import reduced_form
from . import structure as st

MAX_BIS_VERTICES = 24
MAX_CHAIN_DEPTH = 8


# ----- selectors -------------------------------------------------------------

def free_selector() -> LabelledGraph:
    """A lone distinguished vertex: selects every vertex."""
    return LabelledGraph(Graph(["y"]), {}, ("y",))


def star_selector(targets: Sequence) -> LabelledGraph:
    """Star with centre y and one pinned leaf per target: selects the common
    neighbourhood of the targets, each with count 1."""
    targets = list(targets)
    leaves = [f"x{i}" for i in range(1, len(targets) + 1)]
    g = Graph(["y"] + leaves, [("y", x) for x in leaves])
    return LabelledGraph(g, dict(zip(leaves, targets)), ("y",))


def pinned_edge_selector(target) -> LabelledGraph:
    return star_selector([target])


def cancelling_path_selector(anchor) -> LabelledGraph:
    """Path x - y - z with x pinned: count at w is deg(w) on Γ(anchor)."""
    g = Graph(["x", "y", "z"], [("x", "y"), ("y", "z")])
    return LabelledGraph(g, {"x": anchor}, ("y",))


def outside_core_selector(anchor, core_left: Sequence) -> LabelledGraph:
    """z - y - x with z pinned to ``anchor`` and leaves at x pinned to the
    core's left side: core vertices cancel when the core's right side has
    size divisible by p."""
    core_left = list(core_left)
    leaves = [f"x{i}" for i in range(1, len(core_left) + 1)]
    g = Graph(["z", "y", "x"] + leaves, [("z", "y"), ("y", "x")] + [("x", l) for l in leaves])
    pins = {"z": anchor}
    pins.update(dict(zip(leaves, core_left)))
    return LabelledGraph(g, pins, ("y",))


def double_arm_selector(u1, u2) -> LabelledGraph:
    """x1 - y1 - y - y2 - x2 with x1, x2 pinned to u1, u2."""
    g = Graph(["x1", "y1", "y", "y2", "x2"],
              [("x1", "y1"), ("y1", "y"), ("y", "y2"), ("y2", "x2")])
    return LabelledGraph(g, {"x1": u1, "x2": u2}, ("y",))


def _satellites(verts: list, edges: list, pins: dict, hub: str, group: Sequence, tag: str):
    for j, t in enumerate(group, 1):
        z = f"z{tag}_{j}"
        verts.append(z)
        edges.append((hub, z))
        pins[z] = t


def cycle_selector(groups: Sequence, start: int) -> LabelledGraph:
    """Cycle y1..yk where y_i sees pinned copies of group i; distinguished
    y_{start+1}."""
    k = len(groups)
    ys = [f"y{i}" for i in range(1, k + 1)]
    verts, edges, pins = list(ys), [(ys[i], ys[(i + 1) % k]) for i in range(k)], {}
    for i, grp in enumerate(groups):
        _satellites(verts, edges, pins, ys[i], grp, str(i + 1))
    return LabelledGraph(Graph(verts, edges), pins, (ys[start],))


def restricted_path_graph(groups: Sequence) -> LabelledGraph:
    """y_L - y_1 - ... - y_m - y_R where inner y_i sees pinned copies of
    group i; counts restricted walks of length m+1."""
    m = len(groups)
    ys = ["yL"] + [f"y{i}" for i in range(1, m + 1)] + ["yR"]
    verts = list(ys)
    edges = [(ys[i], ys[i + 1]) for i in range(len(ys) - 1)]
    pins = {}
    for i, grp in enumerate(groups, 1):
        _satellites(verts, edges, pins, ys[i], grp, str(i))
    return LabelledGraph(Graph(verts, edges), pins, ("yL", "yR"))


def edge_graph() -> LabelledGraph:
    return LabelledGraph(Graph(["yL", "yR"], [("yL", "yR")]), {}, ("yL", "yR"))


def two_walk_graph() -> LabelledGraph:
    return LabelledGraph(Graph(["yL", "z", "yR"], [("yL", "z"), ("z", "yR")]), {},
                         ("yL", "yR"))


def mosaic_selector(xs: Sequence) -> LabelledGraph:
    """Path y_1..y_k with a pendant z_i pinned to x_i; distinguished y_1."""
    k = len(xs)
    ys = [f"y{i}" for i in range(1, k + 1)]
    zs = [f"z{i}" for i in range(1, k + 1)]
    edges = [(ys[i], ys[i + 1]) for i in range(k - 1)] + list(zip(ys, zs))
    return LabelledGraph(Graph(ys + zs, edges), dict(zip(zs, xs)), (ys[0],))


def amplify(j: LabelledGraph, p: int) -> LabelledGraph:
    """p-1 copies of ``j`` glued at the distinguished vertices."""
    if not j.distinguished:
        raise GraphError("amplification needs a distinguished vertex")
    dist = set(j.distinguished)
    verts, adj, pins = list(j.distinguished), {v: set() for v in j.distinguished}, {}
    for k in range(1, p):
        name = {v: (v if v in dist else f"{v}#{k}") for v in j.graph.vertices}
        for v in j.graph.vertices:
            if v not in dist:
                verts.append(name[v])
                adj[name[v]] = set()
        for u, w in j.graph.edges:
            adj[name[u]].add(name[w])
            adj[name[w]].add(name[u])
        for v, t in j.pins.items():
            pins[name[v]] = t
    return LabelledGraph(Graph._build(verts, adj), pins, j.distinguished)


def selector_count(j: LabelledGraph, h: Graph, targets: Sequence) -> int:
    return count_homs(j, h, tuple(targets), budget=None).value


def selection_counts(j: LabelledGraph, h: Graph, p: int, pairs=None) -> dict:
    """Residues of hom((J, ȳ), (H, v̄)) over all targets (or the given pairs)."""
    if len(j.distinguished) == 1:
        return {v: selector_count(j, h, (v,)) % p for v in h.vertices}
    if len(j.distinguished) != 2:
        raise GraphError("selectors have one or two distinguished vertices")
    if pairs is None:
        pairs = [(u, w) for u in h.vertices for w in h.vertices]
    return {pair: selector_count(j, h, pair) % p for pair in pairs}


def select_set(j: LabelledGraph, h: Graph, p: int) -> frozenset:
    """{v̄ : hom((J, ȳ), (H, v̄)) ≢ 0 mod p}."""
    return frozenset(k for k, c in selection_counts(j, h, p).items() if c)


def _amplified_counts(j: LabelledGraph, h: Graph, p: int, keys) -> tuple:
    """(raw residues, amplified residues); the latter must equal raw^(p-1)."""
    amp = amplify(j, p)
    raw, full = {}, {}
    for key in keys:
        tgt = key if isinstance(key, tuple) else (key,)
        r = selector_count(j, h, tgt) % p
        a = selector_count(amp, h, tgt) % p
        if a != pow(r, p - 1, p):
            raise AssertionReport(f"amplified count {a} at {key!r} is not {r}^(p-1)")
        raw[key], full[key] = r, a
    return raw, full


# ----- serialization helpers ------------------------------------------------

def labelled_to_dict(j: LabelledGraph) -> dict:
    return {"graph": graph_to_dict(j.graph),
            "pins": {str(k): str(v) for k, v in sorted(j.pins.items(), key=lambda kv: str(kv[0]))},
            "distinguished": [str(v) for v in j.distinguished]}


def labelled_from_dict(doc: dict) -> LabelledGraph:
    from .graph import graph_from_dict
    return LabelledGraph(graph_from_dict(doc["graph"]), dict(doc.get("pins", {})),
                         tuple(doc.get("distinguished", ())))


def gadget_from_dict(doc: dict):
    """Inverse of the gadgets' ``to_json``; a certificate document also works."""
    if "gadget" in doc:
        doc = doc["gadget"]
    if "J_E" in doc:
        return HardnessGadget(labelled_from_dict(doc["J_L"]), labelled_from_dict(doc["J_R"]),
                              labelled_from_dict(doc["J_E"]),
                              *(frozenset(doc[k]) for k in ("i_L", "o_L", "i_R", "o_R")),
                              origin=doc.get("origin", ""))
    exp_l = doc.get("expected_left")
    exp_r = doc.get("expected_right")
    return BpGadget(labelled_from_dict(doc["J_L"]), labelled_from_dict(doc["J_R"]),
                    origin=doc.get("origin", ""),
                    expected_left=None if exp_l is None else frozenset(exp_l),
                    expected_right=None if exp_r is None else frozenset(exp_r))


def _sorted(h: Graph, vs) -> list:
    return sorted(vs, key=h.index)


def _key(k) -> str:
    return "|".join(k) if isinstance(k, tuple) else str(k)


# ----- hardness gadgets --------------------------------------------------------

@dataclass
class HardnessGadget:
    J_L: LabelledGraph
    J_R: LabelledGraph
    J_E: LabelledGraph
    i_L: frozenset
    o_L: frozenset
    i_R: frozenset
    o_R: frozenset
    origin: str = ""

    @property
    def weights(self) -> tuple:
        """(λ_l, λ_r, κ_l, κ_r) = (|i_L|, |i_R|, |o_L|, |o_R|)."""
        return (len(self.i_L), len(self.i_R), len(self.o_L), len(self.o_R))

    def swapped(self, side: str = "L") -> "HardnessGadget":
        g = HardnessGadget(**{k: getattr(self, k) for k in
                              ("J_L", "J_R", "J_E", "i_L", "o_L", "i_R", "o_R", "origin")})
        if side in ("L", "both"):
            g.i_L, g.o_L = self.o_L, self.i_L
        if side in ("R", "both"):
            g.i_R, g.o_R = self.o_R, self.i_R
        return g

    def to_json(self, h: Optional[Graph] = None) -> dict:
        srt = (lambda s: _sorted(h, s)) if h is not None else sorted
        return {"origin": self.origin, "J_L": labelled_to_dict(self.J_L),
                "J_R": labelled_to_dict(self.J_R), "J_E": labelled_to_dict(self.J_E),
                "i_L": srt(self.i_L), "o_L": srt(self.o_L),
                "i_R": srt(self.i_R), "o_R": srt(self.o_R)}


@dataclass
class HardnessCertificate:
    valid: bool
    violations: list
    omega_L: frozenset
    omega_R: frozenset
    omega_E: frozenset
    counts_L: dict
    counts_R: dict
    counts_E: dict
    p: int
    target: Graph
    gadget: HardnessGadget

    def __bool__(self) -> bool:
        return self.valid

    def require(self) -> "HardnessCertificate":
        if not self.valid:
            raise ConditionFailure(f"gadget rejected: {self.violations}")
        return self

    def to_json(self) -> dict:
        h = self.target
        return {"kind": "hardness-gadget", "valid": self.valid, "p": self.p,
                "target": graph_to_dict(h), "gadget": self.gadget.to_json(h),
                "omega_L": _sorted(h, self.omega_L), "omega_R": _sorted(h, self.omega_R),
                "omega_E": sorted([list(e) for e in self.omega_E]),
                "counts": {"L": {str(k): v for k, v in self.counts_L.items()},
                           "R": {str(k): v for k, v in self.counts_R.items()},
                           "E": {_key(k): v for k, v in sorted(self.counts_E.items())}},
                "violations": self.violations}


def _one_side_per_component(h: Graph, omega) -> bool:
    """Side containment: inside each component the set lies on
    one side of the 2-colouring."""
    hs = st.with_sides(h)
    for comp in component_vertex_sets(hs):
        sides = {hs.side(v) for v in comp if v in omega}
        if len(sides) > 1:
            return False
    return True


def verify_hardness_gadget(h: Graph, p: int, gadget: HardnessGadget) -> HardnessCertificate:
    """Recompute Ω_L, Ω_R, Ω_E and check both gadget conditions."""
    _, cl = _amplified_counts(gadget.J_L, h, p, h.vertices)
    _, cr = _amplified_counts(gadget.J_R, h, p, h.vertices)
    omega_L = frozenset(v for v, c in cl.items() if c)
    omega_R = frozenset(v for v, c in cr.items() if c)
    pairs = [(u, w) for u in _sorted(h, omega_L) for w in _sorted(h, omega_R)]
    _, ce = _amplified_counts(gadget.J_E, h, p, pairs)
    omega_E = frozenset(k for k, c in ce.items() if c)
    viol = []
    for name, omega, i_s, o_s in (("L", omega_L, gadget.i_L, gadget.o_L),
                                  ("R", omega_R, gadget.i_R, gadget.o_R)):
        if i_s & o_s or (i_s | o_s) != omega:
            diff = sorted(str(v) for v in (omega ^ (i_s | o_s)) | (i_s & o_s))
            viol.append({"condition": f"partition-{name}", "witness": diff})
    for name, s in (("i_L", gadget.i_L), ("o_L", gadget.o_L),
                    ("i_R", gadget.i_R), ("o_R", gadget.o_R)):
        if len(s) % p == 0:
            viol.append({"condition": "1", "witness": [name, len(s)]})
    bad = [[u, w] for u, w in pairs
           if ((u, w) in omega_E) == (u in gadget.i_L and w in gadget.i_R)]
    if bad:
        viol.append({"condition": "2", "witness": bad})
    if h.loops:
        pass
    elif two_colouring(h) is not None:
        for name, omega in (("L", omega_L), ("R", omega_R)):
            if not _one_side_per_component(h, omega):
                viol.append({"condition": "sides", "witness": [name]})
    return HardnessCertificate(not viol, viol, omega_L, omega_R, omega_E, cl, cr, ce, p, h,
                               gadget)


# ----- (B,p)-gadgets -----------------------------------------------------------

@dataclass
class BpGadget:
    J_L: LabelledGraph
    J_R: LabelledGraph
    origin: str = ""
    expected_left: Optional[frozenset] = None
    expected_right: Optional[frozenset] = None

    def to_json(self, h: Optional[Graph] = None) -> dict:
        srt = (lambda s: _sorted(h, s)) if h is not None else sorted
        doc = {"origin": self.origin, "J_L": labelled_to_dict(self.J_L),
               "J_R": labelled_to_dict(self.J_R)}
        if self.expected_left is not None:
            doc["expected_left"] = srt(self.expected_left)
        if self.expected_right is not None:
            doc["expected_right"] = srt(self.expected_right)
        return doc


def selected_graph(h: Graph, omega_L, omega_R) -> Graph:
    """B with L(B) = Ω_L, R(B) = Ω_R and the H-edges between them.

    Original names are kept when the two sets are disjoint; otherwise each
    vertex appears as ``L:x`` / ``R:y``.
    """
    left, right = _sorted(h, omega_L), _sorted(h, omega_R)
    if set(left) & set(right):
        ln = {x: f"L:{x}" for x in left}
        rn = {y: f"R:{y}" for y in right}
    else:
        ln = {x: x for x in left}
        rn = {y: y for y in right}
    adj = {ln[x]: set() for x in left}
    adj.update({rn[y]: set() for y in right})
    rset = set(right)
    for x in left:
        for y in h.neighbours(x):
            if y in rset:
                adj[ln[x]].add(rn[y])
                adj[rn[y]].add(ln[x])
    side = {ln[x]: LEFT for x in left}
    side.update({rn[y]: RIGHT for y in right})
    return Graph._build([ln[x] for x in left] + [rn[y] for y in right], adj, side)


def _strip_side_tags(g: Graph) -> Graph:
    """Drop ``L:``/``R:`` prefixes when the underlying names stay distinct."""
    base = {}
    for v in g.vertices:
        s = str(v)
        base[v] = s[2:] if s[:2] in ("L:", "R:") else v
    if len(set(base.values())) != g.n:
        return g
    return g.relabel(base)


@dataclass
class BpCertificate:
    valid: bool
    violations: list
    omega_L: frozenset
    omega_R: frozenset
    counts_L: dict
    counts_R: dict
    selected: Graph
    reduced: Graph
    hard_components: list
    p: int
    target: Graph
    gadget: BpGadget

    @property
    def hard(self) -> bool:
        return bool(self.hard_components)

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        h = self.target
        return {"kind": "bp-gadget", "valid": self.valid, "p": self.p,
                "target": graph_to_dict(h), "gadget": self.gadget.to_json(h),
                "omega_L": _sorted(h, self.omega_L), "omega_R": _sorted(h, self.omega_R),
                "counts": {"L": {str(k): v for k, v in self.counts_L.items()},
                           "R": {str(k): v for k, v in self.counts_R.items()}},
                "selected": graph_to_dict(self.selected),
                "reduced": graph_to_dict(self.reduced),
                "hard_components": [graph_to_dict(c) for c in self.hard_components],
                "violations": self.violations}


def verify_bp_gadget(h: Graph, p: int, gadget: BpGadget) -> BpCertificate:
    """Recompute the selected sides, build B and its partition-wise reduced form."""
    _, cl = _amplified_counts(gadget.J_L, h, p, h.vertices)
    _, cr = _amplified_counts(gadget.J_R, h, p, h.vertices)
    omega_L = frozenset(v for v, c in cl.items() if c)
    omega_R = frozenset(v for v, c in cr.items() if c)
    viol = []
    if gadget.expected_left is not None and omega_L != gadget.expected_left:
        viol.append({"condition": "left", "witness": sorted(map(str, omega_L ^ gadget.expected_left))})
    if gadget.expected_right is not None and omega_R != gadget.expected_right:
        viol.append({"condition": "right",
                     "witness": sorted(map(str, omega_R ^ gadget.expected_right))})
    b = selected_graph(h, omega_L, omega_R)
    red = reduced_form(b, p, "bip")
    comps = [_strip_side_tags(c) for c in st.non_complete_components(red)]
    return BpCertificate(not viol, viol, omega_L, omega_R, cl, cr, b, red, comps, p, h, gadget)


# ----- constructors: 4-vertex paths ---------------------------------------------

def gadget_4vertex_path(h: Graph, p: int, groups: Optional[Sequence] = None) -> HardnessGadget:
    """Hardness gadget on P(a1,a2,a3,a4): Ω_L = Γ(x2), Ω_R = Γ(x3), J_E an edge."""
    if groups is None:
        groups = st.four_vertex_path_groups(h)
        if groups is None:
            raise ConditionFailure("target is not a 4-vertex path")
    g1, g2, g3, g4 = (frozenset(g) for g in groups)
    sizes = [len(g) for g in (g1, g2, g3, g4)]
    if any(a % p == 0 for a in sizes):
        raise BadCounts(f"multiplicities {sizes} contain a multiple of {p}")
    x2 = sorted(g2, key=h.index)[0]
    x3 = sorted(g3, key=h.index)[0]
    gadget = HardnessGadget(star_selector([x2]), star_selector([x3]), edge_graph(),
                            i_L=g1, o_L=g3, i_R=g4, o_R=g2,
                            origin=f"4-vertex-path{tuple(sizes)}")
    verify_hardness_gadget(h, p, gadget).require()
    return gadget


def generalized_path_gadget(a: Sequence[int], p: int) -> tuple:
    """(P(a1..a4), its verified hardness gadget)."""
    from .families import generalized_path
    h = generalized_path(*a)
    return h, gadget_4vertex_path(h, p)


# ----- constructors: hard vertices ------------------------------------------

def hard_vertex_gadget(h: Graph, v, subset: Sequence = ()) -> BpGadget:
    """Selectors whose B is ∩ B_2(w) over {v} ∪ subset, up to isolated vertices."""
    h = st.with_sides(h)
    s_side = h.side(v)
    same = [v] + [w for w in subset if h.side(w) == s_side]
    other = [w for w in subset if h.side(w) != s_side]
    j_t = star_selector(same)
    j_s = star_selector(other) if other else free_selector()
    if s_side == LEFT:
        return BpGadget(j_s, j_t, origin=f"hard-vertex({v}; {list(subset)})")
    return BpGadget(j_t, j_s, origin=f"hard-vertex({v}; {list(subset)})")


# ----- constructors: cycles -----------------------------------------------------

def gadget_cycle(h: Graph, cycle: st.GeneralizedPath, p: int) -> BpGadget:
    """(B,p)-gadget from a generalized hardness inducing cycle."""
    groups = [tuple(g) for g in cycle.groups]
    if len(groups) < 6 or not st.check_hardness_cycle(h, groups, p):
        raise NotACycleGadget("input is not a generalized hardness inducing cycle")
    gadget = BpGadget(cycle_selector(groups, 0), cycle_selector(groups, 1),
                      origin=f"cycle{tuple(len(g) for g in groups)}")
    cert = verify_bp_gadget(h, p, gadget)
    want_l = set(groups[-1]) | set(groups[1])
    want_r = set(groups[0]) | set(groups[2])
    if not want_l <= cert.omega_L or not want_r <= cert.omega_R:
        raise NotACycleGadget("stated sets are not selected")
    if not cert.omega_L - want_l <= common_neighbourhood(h, groups[0]):
        raise NotACycleGadget("left remainder outside the parallel-cycle region")
    if not cert.omega_R - want_r <= common_neighbourhood(h, groups[1]):
        raise NotACycleGadget("right remainder outside the parallel-cycle region")
    if not cert.hard:
        raise NotACycleGadget("reduced B is complete bipartite")
    return gadget


# ----- constructors: generalized hardness paths ---------------------------------------

def _deg(h, v) -> int:
    return len(h.neighbours(v))


def path_walk_checks(h: Graph, path: st.GeneralizedPath, p: int) -> dict:
    """Restricted walk counts backing the three path constructions."""
    ell = len(path.spine) - 1
    g = path.groups
    res = {}
    cn = [common_neighbourhood(h, grp) for grp in g]
    v1, vl1 = g[1][0], g[ell - 1][0]
    res["v1->v_{l-1}"] = count_walks(h, v1, vl1, ell, cn[1:ell]).value % p
    res["v1->v_l"] = count_walks(h, v1, path.spine[-1], ell + 1, cn[1:ell + 1]).value % p
    res["v0->v_l"] = count_walks(h, path.spine[0], path.spine[-1], ell + 2,
                                 cn[0:ell + 1]).value % p
    return res


def gadget_path_endpoints(h: Graph, path: st.GeneralizedPath, p: int, variant: int,
                          U: Optional[Sequence] = None,
                          U2: Optional[Sequence] = None) -> HardnessGadget:
    """Hardness gadget joining the two ends of a generalized hardness path.

    variant 1: deg(v0) ≢ b_1 and deg(v_l) ≢ b_{l-1};
    variant 2: deg(v_l) ≡ b_{l-1}, deg(v0) ≢ 0, subsets U ⊆ Γ(v0), U2 ⊆ Γ(v_l);
    variant 3: deg(v_l) ≡ b_{l-1}, deg(v0) ≢ b_1, subset U ⊆ Γ(v_l).
    """
    if not st.check_hardness_path(h, path.spine, path.groups, p):
        raise VariantMismatch("not a generalized hardness path")
    ell = len(path.spine) - 1
    v0, vl = path.spine[0], path.spine[-1]
    b1, bl = len(path.groups[1]), len(path.groups[ell - 1])
    d0, dl = _deg(h, v0), _deg(h, vl)
    groups = path.groups

    def subset_ok(S, anchor):
        return (S is not None and set(S) <= set(h.neighbours(anchor)) and len(S) % p != 0
                and len(common_neighbourhood(h, S)) % p != 1 % p)

    if variant == 1:
        if (d0 - b1) % p == 0 or (dl - bl) % p == 0:
            raise VariantMismatch("variant 1 needs deg(v0) ≢ b_1 and deg(v_l) ≢ b_{l-1}")
        o_l, o_r = frozenset(groups[1]), frozenset(groups[ell - 1])
        gadget = HardnessGadget(star_selector([v0]), star_selector([vl]),
                                restricted_path_graph(groups[1:ell]),
                                i_L=frozenset(h.neighbours(v0)) - o_l, o_L=o_l,
                                i_R=frozenset(h.neighbours(vl)) - o_r, o_R=o_r,
                                origin="path-variant-1")
    elif variant == 3:
        if (dl - bl) % p != 0 or (d0 - b1) % p == 0:
            raise VariantMismatch("variant 3 needs deg(v_l) ≡ b_{l-1} and deg(v0) ≢ b_1")
        if U is None:
            U = st.neighbourhood_subset(h, vl, p)
        if not subset_ok(U, vl):
            raise VariantMismatch("no admissible subset at v_l")
        omega_r = common_neighbourhood(h, U)
        o_l = frozenset(groups[1])
        gadget = HardnessGadget(star_selector([v0]), star_selector(U),
                                restricted_path_graph(groups[1:ell + 1]),
                                i_L=frozenset(h.neighbours(v0)) - o_l, o_L=o_l,
                                i_R=omega_r - {vl}, o_R=frozenset([vl]),
                                origin="path-variant-3")
    elif variant == 2:
        if (dl - bl) % p != 0 or d0 % p == 0:
            raise VariantMismatch("variant 2 needs deg(v_l) ≡ b_{l-1} and deg(v0) ≢ 0")
        if U is None:
            U = st.neighbourhood_subset(h, v0, p)
        if U2 is None:
            U2 = st.neighbourhood_subset(h, vl, p)
        if not subset_ok(U, v0) or not subset_ok(U2, vl):
            raise VariantMismatch("no admissible subsets at the two ends")
        om_l, om_r = common_neighbourhood(h, U), common_neighbourhood(h, U2)
        gadget = HardnessGadget(star_selector(U), star_selector(U2),
                                restricted_path_graph(groups[0:ell + 1]),
                                i_L=om_l - {v0}, o_L=frozenset([v0]),
                                i_R=om_r - {vl}, o_R=frozenset([vl]),
                                origin="path-variant-2")
    else:
        raise VariantMismatch(f"unknown variant {variant!r}")
    cert = verify_hardness_gadget(h, p, gadget)
    if not cert.valid:
        raise VariantMismatch(f"variant {variant} gadget rejected: {cert.violations}")
    return gadget


# ----- constructors: mosaic paths ------------------------------------------------------

def gadget_mosaic(h: Graph, q: st.GeneralizedPath, p: int) -> BpGadget:
    """(B,p)-gadget from a partially hard mosaic path x0..xk: J_L follows the
    path from x1 to xk, J_R selects Γ(x0)."""
    xs = list(q.spine)
    if len(xs) < 2:
        raise ConditionFailure("mosaic path needs at least one edge")
    if not st.partially_hard_start(h, xs[0], xs[1], p):
        raise ConditionFailure("mosaic path is not partially hard")
    core = st.complete_core(h, xs[-2], xs[-1])
    a = len(core.left)
    if (_deg(h, xs[-1]) - a) % p == 0:
        raise ConditionFailure("terminal degree is congruent to the core size a")
    gadget = BpGadget(mosaic_selector(xs[1:]), star_selector([xs[0]]),
                      origin=f"mosaic(len={len(xs) - 1})")
    cert = verify_bp_gadget(h, p, gadget)
    if not cert.hard:
        raise ConditionFailure("reduced B is complete bipartite")
    return gadget


# ----- (B,p) and hardness candidates on radius-2 graphs ------------------------------

def _core_of_component(comp: Graph, v) -> st.CompleteCore:
    """Core K of a split component U at v, with v on the left."""
    u = sorted(comp.neighbours(v), key=comp.index)[0]
    return st.complete_core(comp, v, u)


def radius2_candidates(h: Graph, p: int):
    """Candidate gadgets from the radius-2 case analysis, as (case, gadget)."""
    h = st.with_sides(h)
    for v in h.vertices:
        if len(two_ball(h, v).vertices) != h.n:
            continue
        comps = st.split_components(h, v)
        try:
            cores = [_core_of_component(c, v) for c in comps]
        except NotForbiddenFree:
            continue
        dv = _deg(h, v)
        nv = frozenset(h.neighbours(v))
        if len(comps) == 1:
            core = cores[0]
            left, right = set(core.left), set(core.right)
            outs = [u for u in sorted(right, key=h.index) if not set(h.neighbours(u)) <= left]
            b = len(right)
            if outs and b % p != 1 % p:
                yield "A1", hard_vertex_gadget(h, outs[0])
            if len(outs) >= 2 and b % p == 1 % p:
                u1, u2 = outs[0], outs[1]
                l1 = frozenset(h.neighbours(u1)) - left
                l2 = frozenset(h.neighbours(u2)) - left
                yield "A2", HardnessGadget(star_selector([u1]), star_selector([u2]),
                                           two_walk_graph(), i_L=l1, o_L=frozenset(left),
                                           i_R=l2, o_R=frozenset(left), origin="radius2-A2")
            continue
        if dv % p:
            for c, k in zip(comps, cores):
                a1, b1 = len(k.left), len(k.right)
                if b1 % p == 0 and a1 > 1:
                    others = [w for w in k.left if w != v]
                    if a1 != p:
                        yield "B1a", hard_vertex_gadget(h, others[0])
                    else:
                        outs = [u for u in k.right if not set(h.neighbours(u)) <= set(k.left)]
                        for u1 in outs:
                            yield "B1b", BpGadget(cancelling_path_selector(u1),
                                                  star_selector([others[0]]), origin="radius2-B1b")
            big = [(c, k) for c, k in zip(comps, cores)
                   if len(k.left) > 1 and len(k.right) % p]
            for (c1, k1), (c2, k2) in combinations(big, 2):
                yield "B2", HardnessGadget(
                    star_selector(k1.right), star_selector(k2.right), two_walk_graph(),
                    i_L=frozenset(k1.left) - {v}, o_L=frozenset([v]),
                    i_R=frozenset(k2.left) - {v}, o_R=frozenset([v]), origin="radius2-B2")
            for c1, k1 in big:
                yield "B3", BpGadget(star_selector(k1.right), star_selector([v]),
                                     origin="radius2-B3")
        else:
            for c, k in zip(comps, cores):
                if len(k.left) > 1 and len(k.right) % p:
                    yield "C1", BpGadget(star_selector(k.right), star_selector([v]),
                                         origin="radius2-C1")
            for c, k in zip(comps, cores):
                if len(k.left) > 1 and len(k.left) != p:
                    others = [w for w in k.left if w != v]
                    yield "C2a", hard_vertex_gadget(h, others[0])
            outs_by_comp = []
            for c, k in zip(comps, cores):
                outs = [u for u in k.right if not set(h.neighbours(u)) <= set(k.left)]
                if outs:
                    outs_by_comp.append((k, outs[0]))
            for (k1, u1), (k2, u2) in combinations(outs_by_comp, 2):
                yield "C2b", BpGadget(star_selector(k1.right), double_arm_selector(u1, u2),
                                      origin="radius2-C2b")


def outside_core_candidates(h: Graph, p: int):
    """(B,p)-gadgets pairing a core K' with the outside-core selector at w."""
    h = st.with_sides(h)
    for v, u in h.edges:
        for a_, b_ in ((v, u), (u, v)):
            try:
                core = st.complete_core(h, a_, b_)
            except NotForbiddenFree:
                continue
            if len(core.right) % p:
                continue
            for w in core.right:
                if _deg(h, w) <= len(core.left):
                    continue
                for comp in st.split_components(two_ball(h, w), w):
                    if set(comp.vertices) & set(core.left) - {w}:
                        continue
                    x = sorted(comp.neighbours(w), key=h.index)[0]
                    try:
                        k2 = st.complete_core(h, w, x)
                    except NotForbiddenFree:
                        continue
                    yield "outside-core", BpGadget(star_selector(k2.right),
                                                   outside_core_selector(w, core.left),
                                                   origin="outside-core")


# ----- chains -----------------------------------------------------------------------

@dataclass
class BpStep:
    target: Graph
    gadget: BpGadget
    certificate: BpCertificate
    next_target: Graph

    def to_json(self) -> dict:
        doc = self.certificate.to_json()
        doc["next_target"] = graph_to_dict(self.next_target)
        return doc


@dataclass
class GadgetChain:
    """H_k has a (H_{k-1},p)-gadget, ..., H_1 has a p-hardness gadget."""
    p: int
    root: Graph
    steps: list = field(default_factory=list)
    final: Optional[HardnessCertificate] = None
    route: list = field(default_factory=list)

    def verify(self) -> bool:
        """Re-run every verification from scratch."""
        cur = self.root
        for step in self.steps:
            if step.target != cur:
                return False
            cert = verify_bp_gadget(cur, self.p, step.gadget)
            if not cert.valid or step.next_target not in cert.hard_components:
                return False
            if step.next_target.n >= cur.n:
                return False
            cur = step.next_target
        if self.final is None or self.final.target != cur:
            return False
        return verify_hardness_gadget(cur, self.p, self.final.gadget).valid

    def to_json(self) -> dict:
        return {"p": self.p, "root": graph_to_dict(self.root), "route": list(self.route),
                "steps": [s.to_json() for s in self.steps],
                "final": self.final.to_json() if self.final else None}


_RECOVERABLE = (ModhomError,)


def _resolve(h: Graph, p: int, gadget, depth: int, route: str) -> Optional[GadgetChain]:
    if isinstance(gadget, HardnessGadget):
        cert = verify_hardness_gadget(h, p, gadget)
        if not cert.valid:
            return None
        return GadgetChain(p, h, [], cert, [route])
    cert = verify_bp_gadget(h, p, gadget)
    if not cert.valid:
        return None
    for comp in cert.hard_components:
        if comp.n >= h.n:
            continue
        try:
            sub = _dispatch(comp, p, depth + 1)
        except _RECOVERABLE:
            continue
        return GadgetChain(p, h, [BpStep(h, gadget, cert, comp)] + sub.steps, sub.final,
                           [route] + sub.route)
    return None


def _dispatch(h: Graph, p: int, depth: int = 0) -> GadgetChain:
    """Gadget search on a connected, partition-wise reduced, non-complete H."""
    if depth > MAX_CHAIN_DEPTH:
        raise OutOfFragment("gadget chain exceeds the depth limit")
    h = st.with_sides(h)
    if is_complete_bipartite(h):
        raise OutOfFragment("complete bipartite graphs admit no gadget")

    groups = st.four_vertex_path_groups(h)
    if groups is not None and all(len(g) % p for g in groups):
        gadget = gadget_4vertex_path(h, p, groups)
        return _resolve(h, p, gadget, depth, "4-vertex-path")

    def attempts():
        for hv in st.iter_hard_vertices(h, p):
            if st.non_complete_components(hv.reduced) and hv.ball.n < h.n:
                yield "hard-vertex", lambda hv=hv: hard_vertex_gadget(h, hv.vertex, hv.subset)
        if st.has_radius_at_most_two(h) is not None:
            for case, g in radius2_candidates(h, p):
                yield f"radius2-{case}", lambda g=g: g
        cyc = st.find_hardness_cycle(h, p)
        if cyc is not None:
            yield "cycle", lambda: gadget_cycle(h, cyc, p)
        for gp in st.iter_generalized_hardness_paths(h, p):
            for variant in (1, 3, 2):
                yield f"path-variant-{variant}", \
                    lambda gp=gp, variant=variant: gadget_path_endpoints(h, gp, p, variant)
        q = st.find_mosaic_path(h, p)
        if q is not None:
            for k in range(len(q.spine), 1, -1):
                sub = st.GeneralizedPath("mosaic-path", q.spine[:k], q.groups[:k], p)
                yield "mosaic", lambda sub=sub: gadget_mosaic(h, sub, p)
        for case, g in outside_core_candidates(h, p):
            yield case, lambda g=g: g

    for route, make in attempts():
        try:
            gadget = make()
            chain = _resolve(h, p, gadget, depth, route)
        except _RECOVERABLE:
            continue
        if chain is not None:
            return chain
    raise OutOfFragment("no implemented construction applies")


def radius2_gadget(h: Graph, p: int) -> GadgetChain:
    """First verified gadget chain from the radius-2 case analysis."""
    h = st.with_sides(h)
    if st.has_radius_at_most_two(h) is None:
        raise OutOfFragment("graph has radius larger than 2")
    for case, g in radius2_candidates(h, p):
        try:
            chain = _resolve(h, p, g, 0, f"radius2-{case}")
        except _RECOVERABLE:
            continue
        if chain is not None:
            return chain
    raise OutOfFragment("no radius-2 case produced a verified gadget")


def find_gadget(h: Graph, p: int) -> GadgetChain:
    """Verified chain for a bipartite H with a non-complete reduced component.

    The first step of the chain (if any) is the passage from H to that
    component of its partition-wise reduced form.
    """
    h = st.with_sides(h)
    red = reduced_form(h, p, "bip")
    comps = st.non_complete_components(red)
    if not comps:
        raise OutOfFragment("reduced form is a collection of complete bipartite graphs")
    last = None
    for comp in comps:
        try:
            return _dispatch(comp, p)
        except _RECOVERABLE as exc:
            last = exc
    raise OutOfFragment(str(last))


# ----- weighted independent sets -------------------------------------------------

def _independent_sets(g: Graph):
    verts = list(g.vertices)
    chosen = []

    def rec(i, blocked):
        if i == len(verts):
            yield tuple(chosen)
            return
        v = verts[i]
        yield from rec(i + 1, blocked)
        if v not in blocked and not g.has_loop(v):
            chosen.append(v)
            yield from rec(i + 1, blocked | g.neighbours(v))
            chosen.pop()

    yield from rec(0, frozenset())


def count_weighted_bis(g: Graph, lam_l: int, lam_r: int, kap_l: int, kap_r: int,
                       p: Optional[int] = None) -> int:
    """Σ_I λl^|L∩I| κl^|L\\I| λr^|R∩I| κr^|R\\I| (mod p if given)."""
    if not g.has_bipartition:
        raise MissingBipartition("weighted BIS needs a fixed bipartition")
    if g.n > MAX_BIS_VERTICES:
        raise InstanceTooLarge(f"weighted BIS brute force limited to {MAX_BIS_VERTICES} vertices")
    nl, nr = len(g.left), len(g.right)
    total = 0
    for ind in _independent_sets(g):
        il = sum(1 for v in ind if g.side(v) == LEFT)
        ir = len(ind) - il
        term = lam_l ** il * kap_l ** (nl - il) * lam_r ** ir * kap_r ** (nr - ir)
        total += term if p is None else term % p
    return total if p is None else total % p


def bis_weight_transform(lam_l: int, lam_r: int, kap_l: int, kap_r: int, p: int) -> tuple:
    """(λl κl^{-1}, λr κr^{-1}) mod p."""
    from .linalg import inv_mod
    return (lam_l * inv_mod(kap_l, p) % p, lam_r * inv_mod(kap_r, p) % p)


def check_bis_transform(g: Graph, lam_l, lam_r, kap_l, kap_r, p: int) -> tuple:
    """(Z_{λ,κ}, κl^|L| κr^|R| Z_{λ*,1,1}) mod p; the two agree."""
    ls, rs = bis_weight_transform(lam_l, lam_r, kap_l, kap_r, p)
    lhs = count_weighted_bis(g, lam_l, lam_r, kap_l, kap_r, p)
    rhs = pow(kap_l, len(g.left), p) * pow(kap_r, len(g.right), p) * \
        count_weighted_bis(g, ls, rs, 1, 1, p) % p
    return lhs, rhs


# ----- executable reductions --------------------------------------------------------

class _Builder:
    """Accumulates a labelled graph from glued copies."""

    def __init__(self):
        self.verts, self.adj, self.pins = [], {}, {}

    def add_vertex(self, v):
        if v not in self.adj:
            self.verts.append(v)
            self.adj[v] = set()

    def add_edge(self, u, w):
        self.adj[u].add(w)
        self.adj[w].add(u)

    def attach(self, j: LabelledGraph, anchors: Sequence, prefix: str):
        name = {}
        for d, a in zip(j.distinguished, anchors):
            name[d] = a
        for v in j.graph.vertices:
            if v not in name:
                name[v] = f"{prefix}/{v}"
                self.add_vertex(name[v])
        for u, w in j.graph.edges:
            self.add_edge(name[u], name[w])
        for v, t in j.pins.items():
            self.pins[name[v]] = t

    def build(self, side=None) -> LabelledGraph:
        return LabelledGraph(Graph._build(self.verts, self.adj, side), self.pins)


@dataclass
class ReductionCheck:
    graph: LabelledGraph
    lhs: int
    rhs: int
    p: int

    @property
    def holds(self) -> bool:
        return self.lhs % self.p == self.rhs % self.p


def reduce_via_Bp(g: Graph, gadget: BpGadget, h: Graph, p: int) -> ReductionCheck:
    """Build J from g and amplified selectors; check hom(J,H) ≡ hom^bip(g,B)."""
    if not g.has_bipartition:
        raise MissingBipartition("input needs a fixed bipartition")
    cert = verify_bp_gadget(h, p, gadget)
    jl, jr = amplify(gadget.J_L, p), amplify(gadget.J_R, p)
    bld = _Builder()
    for v in g.vertices:
        bld.add_vertex(v)
    for u, w in g.edges:
        bld.add_edge(u, w)
    for v in g.vertices:
        bld.attach(jl if g.side(v) == LEFT else jr, (v,), f"{v}")
    j = bld.build()
    lhs = count_homs(j, h, budget=None).value % p
    rhs = count_bip_homs(g, cert.selected, budget=None).value % p
    out = ReductionCheck(j, lhs, rhs, p)
    if not out.holds:
        raise AssertionReport(f"hom(J,H) = {lhs} but hom^bip(G,B) = {rhs} mod {p}")
    return out


def _side_of(h: Graph, omega) -> str:
    sides = {h.side(v) for v in omega}
    if len(sides) != 1:
        raise ConditionFailure("selected set meets both sides of the target")
    return sides.pop()


def _colour_from(lab: LabelledGraph, h: Graph, anchors: dict):
    """2-colour each component from its anchor (g-vertex side or pin side)."""
    g = lab.graph
    col = {}
    for comp in component_vertex_sets(g):
        start = next((v for v in comp if v in anchors), None)
        if start is None:
            start = next((v for v in comp if v in lab.pins), comp[0])
            first = h.side(lab.pins[start]) if start in lab.pins else LEFT
        else:
            first = anchors[start]
        col[start] = first
        stack = [start]
        while stack:
            x = stack.pop()
            for y in g.neighbours(x):
                if y not in col:
                    col[y] = RIGHT if col[x] == LEFT else LEFT
                    stack.append(y)
                elif col[y] == col[x]:
                    raise ConditionFailure("constructed graph is not bipartite")
    return col


def reduce_bis_to_biphoms(g: Graph, gadget: HardnessGadget, h: Graph, p: int) -> ReductionCheck:
    """Build (G', θ) and check hom^bip((G',θ),H) ≡ Z_{|i_L|,|i_R|}^{|o_L|,|o_R|}(G)."""
    if not g.has_bipartition:
        raise MissingBipartition("input needs a fixed bipartition")
    h = st.with_sides(h)
    cert = verify_hardness_gadget(h, p, gadget).require()
    jl, jr, je = amplify(gadget.J_L, p), amplify(gadget.J_R, p), amplify(gadget.J_E, p)
    bld = _Builder()
    for v in g.vertices:
        bld.add_vertex(v)
    for k, (u, w) in enumerate(g.edges):
        x, y = (u, w) if g.side(u) == LEFT else (w, u)
        bld.attach(je, (x, y), f"e{k}")
    for v in g.vertices:
        bld.attach(jl if g.side(v) == LEFT else jr, (v,), f"{v}")
    plain = bld.build()
    sl, sr = _side_of(h, cert.omega_L), _side_of(h, cert.omega_R)
    z = count_weighted_bis(g, *gadget.weights, p)
    last = None
    for flip in (False, True):
        anchors = {}
        for v in g.vertices:
            s = sl if g.side(v) == LEFT else sr
            if flip:
                s = RIGHT if s == LEFT else LEFT
            anchors[v] = s
        col = _colour_from(plain, h, anchors)
        gp = LabelledGraph(Graph._build(plain.graph.vertices,
                                        {v: plain.graph.neighbours(v) for v in plain.graph.vertices},
                                        col), plain.pins)
        lhs = count_bip_homs(gp, h, budget=None).value % p
        last = ReductionCheck(gp, lhs, z, p)
        if last.holds:
            return last
    raise AssertionReport(f"hom^bip((G',θ),H) = {last.lhs} but Z = {z} mod {p}")
