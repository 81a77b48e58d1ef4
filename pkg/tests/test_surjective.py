import random

import pytest
from hypothesis import given, settings, strategies as hst

from modhom import families as F
from modhom import surjective as S
from modhom.dichotomy import HARD, TRACTABLE
from modhom.errors import InstanceTooLarge
from modhom.graph import DistinguishedGraph, distinguished_from_dict

from helpers import graphs, naive_part_surj, random_graph


@hst.composite
def dist_graphs(draw, max_n=4):
    h = draw(graphs(min_n=1, max_n=max_n))
    dv = draw(hst.sets(hst.sampled_from(h.vertices)))
    de = draw(hst.sets(hst.sampled_from(h.edges))) if h.edges else set()
    return DistinguishedGraph(h, sorted(dv), sorted(de))


def test_count_examples():
    k2 = F.complete_graph(2)
    hd = DistinguishedGraph(k2, k2.vertices, [("k1", "k2")])
    assert S.count_part_surj(k2, hd) == 2
    assert S.count_part_surj(F.single_vertex(), hd) == 0
    assert naive_part_surj(F.path_graph(3), F.path_graph(3), ["x1", "x3"], []) == 2
    p3 = F.path_graph(3)
    assert S.count_part_surj(p3, DistinguishedGraph(p3, ["x1", "x3"], ())) == 2


def test_expansion_of_k2():
    k2 = F.complete_graph(2)
    q = S.expand_inclusion_exclusion(DistinguishedGraph(k2, k2.vertices, ()))
    coeffs = sorted((f.n, f.m, c) for f, c in q)
    assert coeffs == [(0, 0, 1), (1, 0, -2), (2, 1, 1)]


def test_deletion_terms_skip_vertices_on_distinguished_edges():
    p3 = F.path_graph(3)
    hd = DistinguishedGraph(p3, ["x1", "x2", "x3"], [("x1", "x2")])
    terms = list(S.deletion_terms(hd))
    # one distinguished edge, one free distinguished vertex
    assert len(terms) == 4
    assert sorted(sign for _, sign in terms) == [-1, -1, 1, 1]
    assert all(f.n >= 2 for f, _ in terms)


@settings(max_examples=80)
@given(graphs(max_n=4, loops=False), dist_graphs())
def test_expansion_matches_brute_force(g, hd):
    q = S.expand_inclusion_exclusion(hd)
    want = naive_part_surj(g, hd.graph, hd.dist_vertices, hd.dist_edges)
    assert S.count_part_surj(g, hd) == want
    assert S.count_via_expansion(g, q) == want


@given(graphs(max_n=3, loops=False), dist_graphs(), hst.sampled_from([2, 3, 5]))
def test_expansion_mod_p(g, hd, p):
    q = S.expand_inclusion_exclusion(hd, p)
    assert S.count_via_expansion(g, q) % p == S.count_part_surj(g, hd, p)


def test_expansion_limit():
    h = F.reflexive_complete(7)
    with pytest.raises(InstanceTooLarge):
        list(S.deletion_terms(DistinguishedGraph(h, h.vertices, h.edges)))


def test_single_leaf_star_is_not_zero():
    s = F.star(3)
    hd = DistinguishedGraph(s, ["l1"], ())
    tr = S.dist_reduce(hd, 3)
    assert not tr.zero_everywhere
    # K1 hits the leaf only by mapping onto it
    assert S.count_part_surj(F.single_vertex(), hd) == 1


def test_lost_distinguished_vertex_gives_zero():
    # the swap l1 <-> l2 fixes V^dist setwise but moves both of its vertices
    k22 = F.complete_bipartite(2, 2, bipartition=False)
    hd = DistinguishedGraph(k22, ["l1", "l2"], ())
    tr = S.dist_reduce(hd, 2)
    assert tr.zero_everywhere and set(tr.lost) == {"l1", "l2"}
    for g in (F.single_vertex(), F.path_graph(3), F.complete_graph(2)):
        assert naive_part_surj(g, k22, ["l1", "l2"], []) % 2 == 0


def test_zero_everywhere_implies_zero_counts():
    rng = random.Random(5)
    seen = 0
    while seen < 10:
        h = random_graph(rng, rng.randint(2, 4), 0.5)
        dv = [v for v in h.vertices if rng.random() < 0.5]
        hd = DistinguishedGraph(h, dv, ())
        p = rng.choice([2, 3])
        if not S.dist_reduce(hd, p).zero_everywhere:
            continue
        seen += 1
        g = random_graph(rng, rng.randint(1, 4), 0.5, loops=False)
        assert naive_part_surj(g, h, hd.dist_vertices, ()) % p == 0


def test_presets():
    k23 = F.complete_bipartite(2, 3, bipartition=False)
    assert S.vertex_surjective(k23).dist_vertices == set(k23.vertices)
    assert len(S.compaction(k23).dist_edges) == 6
    assert S.classify_vertex_surjective(k23, 5).label == TRACTABLE
    assert S.classify_compaction(F.star(3), 2).label == TRACTABLE
    v = S.classify_compaction(F.path_graph(4), 3)
    assert v.label == HARD
    assert v.conditional == S.CONDITIONAL_TAG
    assert v.to_json()["conditional"] == S.CONDITIONAL_TAG


def test_regression_instance():
    hd = S.part_surj_regression_instance()
    assert not S.aut_dist_equals_aut(hd)
    v = S.classify_part_surj(hd, 2)
    assert v.label == TRACTABLE
    assert "normalized-expansion" in v.evidence["stages"]


def test_dist_trace_json_round_trip():
    hd = DistinguishedGraph(F.path_graph(5), ["x3"], ())
    tr = S.dist_reduce(hd, 2)
    doc = tr.to_json()
    back = distinguished_from_dict({**doc["result"], "dist_vertices": doc["dist_vertices"],
                                    "dist_edges": doc["dist_edges"]})
    assert back.graph == tr.result.graph
    assert back.dist_vertices == tr.result.dist_vertices


@settings(max_examples=30)
@given(dist_graphs(max_n=4), hst.sampled_from([2, 3]))
def test_dist_reduce_preserves_counts_mod_p(hd, p):
    tr = S.dist_reduce(hd, p)
    for g in (F.single_vertex(), F.complete_graph(2), F.path_graph(3)):
        want = naive_part_surj(g, hd.graph, hd.dist_vertices, hd.dist_edges) % p
        if tr.zero_everywhere:
            assert want == 0
        else:
            red = tr.result
            assert naive_part_surj(g, red.graph, red.dist_vertices, red.dist_edges) % p == want
