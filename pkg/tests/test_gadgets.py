import random

import pytest
from hypothesis import given, settings, strategies as hst

from modhom import families as F
from modhom import gadgets as gd
from modhom import structure as st
from modhom.errors import (BadCounts, ConditionFailure, MissingBipartition, NotACycleGadget,
                           OutOfFragment, VariantMismatch)
from modhom.graph import Graph, common_neighbourhood, disjoint_union
from modhom.homs import count_bip_homs

from helpers import bipartite_graphs, graphs, random_bipartite


def _sided(edge_str):
    es = [tuple(x.split("-")) for x in edge_str.split()]
    vs = sorted({v for e in es for v in e}, key=lambda s: int(s[1:]))
    return st.with_sides(Graph(vs, es))


# hand-built targets, each checked to carry the named construction
PATH_INSTANCES = {
    "variant1-p2": ("v0-v3 v0-v5 v1-v0 v1-v2 v3-v4", 2, 1, ("v1", "v0", "v3")),
    "variant1-p3": ("v0-v3 v0-v5 v1-v0 v1-v2 v3-v4 v0-v6", 3, 1, ("v1", "v0", "v3")),
    "variant3-p2": ("v0-v5 v0-v7 v1-v0 v1-v2 v1-v4 v2-v3 v5-v6", 2, 3, ("v2", "v1", "v0")),
    "variant2-p3": ("v0-v10 v1-v10 v1-v5 v1-v6 v1-v8 v2-v5 v2-v7 v2-v9 v3-v10 v3-v7 "
                    "v3-v9 v4-v10 v4-v9", 3, 2, ("v5", "v1", "v10")),
    "variant2-p2": ("v0-v10 v0-v9 v1-v10 v1-v6 v2-v10 v2-v6 v2-v8 v3-v7 v3-v8 v3-v9 "
                    "v4-v7 v4-v8 v5-v9", 2, 2, ("v9", "v3", "v8", "v2", "v10")),
}

CYCLE_INSTANCES = {
    2: "v0-v3 v0-v7 v1-v3 v1-v4 v1-v5 v1-v6 v2-v4 v2-v5 v2-v6 v2-v7",
    3: "v0-v4 v0-v7 v1-v4 v1-v5 v1-v6 v1-v7 v1-v9 v2-v7 v2-v8 v3-v6 v3-v8",
}


def _two_k22_with_pendants():
    es = [("a1", "s"), ("a1", "t1"), ("b1", "s"), ("b1", "t1"),
          ("s", "a2"), ("s", "b2"), ("t2", "a2"), ("t2", "b2"),
          ("a1", "q0"), ("a2", "q1")]
    vs = ["a1", "b1", "s", "t1", "a2", "b2", "t2", "q0", "q1"]
    return st.with_sides(Graph(vs, es))


# ----- selectors -------------------------------------------------------------------

def test_star_selector_selects_common_neighbourhood():
    k23 = F.complete_bipartite(2, 3)
    j = gd.star_selector(["l1", "l2"])
    assert gd.select_set(j, k23, 2) == frozenset(["r1", "r2", "r3"])
    assert gd.selection_counts(j, k23, 2) == {"l1": 0, "l2": 0, "r1": 1, "r2": 1, "r3": 1}


def test_free_selector_selects_everything():
    h = F.path_graph(5)
    assert gd.select_set(gd.free_selector(), h, 3) == frozenset(h.vertices)


def test_cancelling_path_counts_degrees():
    # count at w is deg(w) when w ~ anchor
    s = F.star(3)
    counts = gd.selection_counts(gd.cancelling_path_selector("c"), s, 5)
    assert counts == {"c": 0, "l1": 1, "l2": 1, "l3": 1}
    k23 = F.complete_bipartite(2, 3)
    assert gd.select_set(gd.cancelling_path_selector("l1"), k23, 2) == frozenset()


def test_amplify_shape_and_fermat():
    j = gd.star_selector(["l1"])
    amp = gd.amplify(j, 5)
    assert amp.graph.n == 1 + 4 and amp.distinguished == ("y",)
    h = F.complete_bipartite(2, 3)
    j = gd.cancelling_path_selector("l1")
    for p in (2, 3, 5):
        a = gd.amplify(j, p)
        for v in h.vertices:
            raw = gd.selector_count(j, h, (v,))
            assert gd.selector_count(a, h, (v,)) == raw ** (p - 1)


@given(graphs(min_n=1, max_n=4), hst.sampled_from([2, 3]))
def test_amplified_selection_equals_raw_selection(h, p):
    v = h.vertices[0]
    j = gd.cancelling_path_selector(v)
    raw = gd.select_set(j, h, p)
    assert gd.select_set(gd.amplify(j, p), h, p) == raw
    sel = gd.selection_counts(gd.amplify(j, p), h, p)
    assert set(sel.values()) <= {0, 1}


@given(graphs(min_n=1, max_n=5), hst.data())
def test_star_selector_property(h, data):
    targets = data.draw(hst.lists(hst.sampled_from(h.vertices), min_size=1, max_size=3))
    got = gd.select_set(gd.star_selector(targets), h, 2)
    assert got == frozenset(common_neighbourhood(h, targets))


def test_selected_graph_names():
    p4 = F.path_graph(4)
    b = gd.selected_graph(p4, {"x1", "x3"}, {"x2", "x4"})
    assert b.has_bipartition and set(b.vertices) == set(p4.vertices) and b.m == 3
    b = gd.selected_graph(p4, {"x2"}, {"x2", "x3"})
    assert set(b.vertices) == {"L:x2", "R:x2", "R:x3"}
    assert b.m == 1


# ----- hardness gadgets --------------------------------------------------------------

@pytest.mark.parametrize("sizes,p", [((1, 1, 1, 1), 2), ((2, 2, 1, 2), 3)])
def test_path_gadgets_verify(sizes, p):
    h, gadget = gd.generalized_path_gadget(sizes, p)
    cert = gd.verify_hardness_gadget(h, p, gadget)
    assert cert.valid and not cert.violations
    assert gadget.weights == (sizes[0], sizes[3], sizes[2], sizes[1])
    # Ω_E misses exactly i_L × i_R
    full = {(u, w) for u in cert.omega_L for w in cert.omega_R}
    assert full - cert.omega_E == {(u, w) for u in gadget.i_L for w in gadget.i_R}


@pytest.mark.parametrize("side", ["L", "R"])
def test_swapped_gadget_is_rejected(side):
    h, gadget = gd.generalized_path_gadget((1, 1, 1, 1), 2)
    cert = gd.verify_hardness_gadget(h, 2, gadget.swapped(side))
    assert not cert.valid
    assert any(v["condition"] == "2" for v in cert.violations)
    with pytest.raises(ConditionFailure):
        cert.require()


def test_bad_multiplicity_is_rejected():
    with pytest.raises(BadCounts):
        gd.generalized_path_gadget((3, 1, 1, 1), 3)
    with pytest.raises(ConditionFailure):
        gd.gadget_4vertex_path(F.cycle_graph(6), 2)


def test_partition_violation_is_reported():
    h, gadget = gd.generalized_path_gadget((1, 1, 1, 1), 2)
    bad = gd.HardnessGadget(gadget.J_L, gadget.J_R, gadget.J_E, gadget.i_L, frozenset(),
                            gadget.i_R, gadget.o_R)
    cert = gd.verify_hardness_gadget(h, 2, bad)
    assert {"partition-L", "1"} <= {v["condition"] for v in cert.violations}


def test_certificate_json_round_trip():
    h, gadget = gd.generalized_path_gadget((2, 2, 1, 2), 3)
    doc = gd.verify_hardness_gadget(h, 3, gadget).to_json()
    back = gd.gadget_from_dict(doc)
    assert back.weights == gadget.weights
    assert gd.verify_hardness_gadget(h, 3, back).valid
    bp = gd.hard_vertex_gadget(F.path_graph(5, bipartition=True), "x1")
    back = gd.gadget_from_dict(bp.to_json())
    assert gd.select_set(back.J_L, F.path_graph(5), 2) == gd.select_set(bp.J_L,
                                                                        F.path_graph(5), 2)


@pytest.mark.parametrize("name", sorted(PATH_INSTANCES))
def test_path_endpoint_variants(name):
    edges, p, variant, spine = PATH_INSTANCES[name]
    h = _sided(edges)
    path = next(gp for gp in st.iter_generalized_hardness_paths(h, p) if gp.spine == spine)
    gadget = gd.gadget_path_endpoints(h, path, p, variant)
    assert gadget.origin == f"path-variant-{variant}"
    assert gd.verify_hardness_gadget(h, p, gadget).valid
    assert set(gd.path_walk_checks(h, path, p)) == {"v1->v_{l-1}", "v1->v_l", "v0->v_l"}


def test_path_variant_mismatch():
    edges, p, _, spine = PATH_INSTANCES["variant1-p2"]
    h = _sided(edges)
    path = next(gp for gp in st.iter_generalized_hardness_paths(h, p) if gp.spine == spine)
    with pytest.raises(VariantMismatch):
        gd.gadget_path_endpoints(h, path, p, 3)
    with pytest.raises(VariantMismatch):
        gd.gadget_path_endpoints(h, path, p, 7)
    fake = st.GeneralizedPath("hardness-path", ("v2", "v1", "v0"), (("v2",), ("v1",), ("v0",)), p)
    with pytest.raises(VariantMismatch):
        gd.gadget_path_endpoints(h, fake, p, 1)


# ----- (B,p)-gadgets ---------------------------------------------------------------

@pytest.mark.parametrize("p", [2, 3])
def test_c6_cycle_gadget(p):
    c6 = st.with_sides(F.cycle_graph(6))
    cyc = st.find_hardness_cycle(c6, p)
    gadget = gd.gadget_cycle(c6, cyc, p)
    cert = gd.verify_bp_gadget(c6, p, gadget)
    assert cert.valid and cert.hard
    assert all(c.n < c6.n for c in cert.hard_components)


@pytest.mark.parametrize("p", sorted(CYCLE_INSTANCES))
def test_cycle_gadget_instances(p):
    h = _sided(CYCLE_INSTANCES[p])
    cyc = st.find_hardness_cycle(h, p)
    assert cyc is not None
    assert gd.verify_bp_gadget(h, p, gd.gadget_cycle(h, cyc, p)).hard


def test_short_cycle_is_not_a_gadget():
    c4 = st.with_sides(F.cycle_graph(4))
    assert st.find_hardness_cycle(c4, 2) is None
    groups = tuple((v,) for v in c4.vertices)
    fake = st.GeneralizedPath("hardness-cycle", tuple(c4.vertices), groups, 2)
    with pytest.raises(NotACycleGadget):
        gd.gadget_cycle(c4, fake, 2)


def test_mosaic_gadget():
    h = _two_k22_with_pendants()
    q = st.find_mosaic_path(h, 2)
    assert q is not None
    found = None
    for k in range(len(q.spine), 1, -1):
        sub = st.GeneralizedPath("mosaic-path", q.spine[:k], q.groups[:k], 2)
        try:
            found = gd.gadget_mosaic(h, sub, 2)
            break
        except ConditionFailure:
            continue
    assert found is not None
    assert gd.verify_bp_gadget(h, 2, found).hard
    short = st.GeneralizedPath("mosaic-path", q.spine[:1], q.groups[:1], 2)
    with pytest.raises(ConditionFailure):
        gd.gadget_mosaic(h, short, 2)


def test_hard_vertex_gadget_selects_two_ball():
    p6 = F.path_graph(6, bipartition=True)
    gadget = gd.hard_vertex_gadget(p6, "x1")
    cert = gd.verify_bp_gadget(p6, 2, gadget)
    assert cert.omega_L | cert.omega_R >= {"x1", "x2", "x3"}
    assert cert.valid


@given(bipartite_graphs(min_n=2, max_n=6, connected=True))
def test_hard_vertex_with_no_subset_has_a_free_side(h):
    v = h.vertices[0]
    gadget = gd.hard_vertex_gadget(h, v)
    free = gadget.J_L if h.side(v) == "L" else gadget.J_R
    assert gd.select_set(free, h, 2) == frozenset(h.vertices)


def test_find_gadget_chain_verifies():
    # the cycle, variant1-p2 and mosaic targets reduce to complete pieces at p = 2
    targets = [(_sided(PATH_INSTANCES[k][0]), PATH_INSTANCES[k][1]) for k in sorted(PATH_INSTANCES)
               if k != "variant1-p2"]
    targets += [(st.with_sides(F.cycle_graph(8)), 3), (st.with_sides(F.path_graph(5)), 3)]
    for h, p in targets:
        chain = gd.find_gadget(h, p)
        assert chain.route
        assert chain.verify()
        assert chain.final is not None and chain.final.valid
        assert chain.to_json()["p"] == p


def test_find_gadget_refuses_when_reduced_form_is_complete():
    with pytest.raises(OutOfFragment):
        gd.find_gadget(_two_k22_with_pendants(), 2)
    with pytest.raises(OutOfFragment):
        gd.find_gadget(st.with_sides(F.cycle_graph(6)), 2)


# ----- weighted independent sets and reductions -----------------------------------

def test_weighted_bis_examples():
    e = Graph(["a", "b"], [("a", "b")], {"L": ["a"], "R": ["b"]})
    assert gd.count_weighted_bis(e, 1, 1, 1, 1) == 3
    assert gd.count_weighted_bis(e, 0, 1, 1, 1) == 2
    assert gd.count_weighted_bis(e, 2, 3, 1, 1) == 1 + 2 + 3
    with pytest.raises(MissingBipartition):
        gd.count_weighted_bis(F.path_graph(2), 1, 1, 1, 1)


def test_bis_transform_on_random_graphs():
    rng = random.Random(11)
    p4 = F.path_graph(4, bipartition=True)
    assert gd.check_bis_transform(p4, 1, 1, 2, 2, 5) == (0, 0)
    for _ in range(5):
        g = random_bipartite(rng, rng.randint(1, 7))
        lhs, rhs = gd.check_bis_transform(g, *(rng.randint(1, 4) for _ in range(4)), 5)
        assert lhs == rhs


@given(bipartite_graphs(max_n=5), hst.tuples(*[hst.integers(1, 4)] * 4))
def test_bis_product_over_components(g, w):
    # weights multiply across isolated vertices: Z(K1 on L) = λl + κl
    k1 = Graph(["z"], [], {"L": ["z"], "R": []})
    both = disjoint_union(g, k1)
    assert gd.count_weighted_bis(both, *w) == gd.count_weighted_bis(g, *w) * (w[0] + w[2])


def _small_inputs():
    return [Graph(["a", "b"], [("a", "b")], {"L": ["a"], "R": ["b"]}),
            Graph(["a", "b"], [], {"L": ["a", "b"], "R": []}),
            F.path_graph(3, bipartition=True),
            F.empty_graph()]


def test_reduce_via_bp():
    c6 = st.with_sides(F.cycle_graph(6))
    cyc = st.find_hardness_cycle(c6, 2)
    gadget = gd.gadget_cycle(c6, cyc, 2)
    b = gd.verify_bp_gadget(c6, 2, gadget).selected
    for g in _small_inputs():
        if g.n == 0:
            g = Graph([], [], {"L": [], "R": []})
        out = gd.reduce_via_Bp(g, gadget, c6, 2)
        assert out.holds
        assert out.rhs == count_bip_homs(g, b).value % 2


def test_reduce_bis_to_biphoms_small():
    for sizes, p in [((1, 1, 1, 1), 2), ((2, 2, 1, 2), 3)]:
        h, gadget = gd.generalized_path_gadget(sizes, p)
        for g in _small_inputs():
            if g.n == 0:
                g = Graph([], [], {"L": [], "R": []})
            out = gd.reduce_bis_to_biphoms(g, gadget, h, p)
            assert out.holds
            assert out.rhs == gd.count_weighted_bis(g, *gadget.weights, p)


@settings(max_examples=25)
@given(bipartite_graphs(max_n=4))
def test_reduction_matches_naive_bis(g):
    h, gadget = gd.generalized_path_gadget((1, 1, 1, 1), 2)
    out = gd.reduce_bis_to_biphoms(g, gadget, h, 2)
    # oracle: independent sets by subset enumeration
    vs = list(g.vertices)
    z = 0
    for mask in range(1 << len(vs)):
        ind = {vs[i] for i in range(len(vs)) if mask >> i & 1}
        if any(u in ind and w in ind for u, w in g.edges):
            continue
        z += 1
    assert out.lhs == z % 2
