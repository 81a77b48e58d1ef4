import json

import pytest
from hypothesis import given, strategies as st

from modhom import families as F
from modhom.errors import (BipartitionViolation, DuplicateEdge, GraphError, PinConflict,
                           UnknownVertex)
from modhom.graph import (DistinguishedGraph, Graph, LabelledGraph, blocks,
                          connected_components, disjoint_union, distance, dumps,
                          graph_from_dict, identify, induced_subgraph, is_bipartite,
                          is_bipartite_with_partition, is_complete_bipartite,
                          is_reflexive_complete, loads, tensor_product, two_ball,
                          two_colouring)

from helpers import bipartite_graphs, graphs, naive_count, nx_isomorphic


def test_construction_rejects_bad_input():
    with pytest.raises(DuplicateEdge):
        Graph(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(UnknownVertex):
        Graph(["a"], [("a", "b")])
    with pytest.raises(BipartitionViolation):
        Graph(["a"], [("a", "a")], {"L": ["a"], "R": []})
    with pytest.raises(BipartitionViolation):
        Graph(["a", "b"], [("a", "b")], {"L": ["a", "b"], "R": []})


def test_loops_are_edges():
    g = F.edge_with_loop()
    assert g.m == 2
    assert len(g.loops) == 1
    assert g.has_loop(g.loops[0][0])


def test_distinguished_edge_endpoints_become_distinguished():
    g = F.path_graph(3)
    assert DistinguishedGraph(g, ["x1"], [("x1", "x2")]).dist_vertices == {"x1", "x2"}
    with pytest.raises(GraphError):
        DistinguishedGraph(g, [], [("x1", "x3")])
    hd = DistinguishedGraph(g, ["x1", "x2"], [("x2", "x1")])
    assert hd.sorted_dist_edges() == (("x1", "x2"),)


def test_labelled_graph_rejects_pinned_distinguished():
    with pytest.raises(PinConflict):
        LabelledGraph(F.path_graph(2), {"x1": "a"}, ["x1"])


def test_disjoint_union_examples():
    u = disjoint_union(F.single_vertex(), F.single_vertex())
    assert (u.n, u.m) == (2, 0)
    k = F.complete_graph(2)
    u = disjoint_union(k, k)
    assert (u.n, u.m, len(connected_components(u))) == (4, 2, 2)
    assert sorted(u.vertices) == ["k1#1", "k1#2", "k2#1", "k2#2"]
    # oracle: 2 + 2
    assert naive_count(k, u) == 4


def test_disjoint_union_merges_bipartitions():
    a = F.complete_bipartite(1, 2)
    u = disjoint_union(a, a)
    assert u.has_bipartition
    assert len(u.left) == 2 and len(u.right) == 4


def test_tensor_examples():
    k2 = F.complete_graph(2)
    assert nx_isomorphic(tensor_product(F.loop_vertex(), k2), k2)
    assert nx_isomorphic(tensor_product(F.edge_with_loop(), k2), F.path_graph(4))
    assert nx_isomorphic(tensor_product(F.complete_graph(3), k2), F.cycle_graph(6))


@given(graphs(max_n=5))
def test_tensor_with_edge_is_bipartite(g):
    t = tensor_product(g, F.complete_graph(2))
    assert t.n == 2 * g.n
    assert is_bipartite(t)
    assert not t.loops


def test_identify_examples():
    k = F.complete_graph(2)
    assert nx_isomorphic(identify(k, "k1", k, "k1"), F.path_graph(3))
    p3 = F.path_graph(3)
    assert nx_isomorphic(identify(p3, "x2", p3, "x2"), F.star(4))
    with pytest.raises(PinConflict):
        identify(LabelledGraph(k, {"k1": "z"}), "k1", k, "k1")


def test_induced_subgraph_examples():
    c4 = F.cycle_graph(4)
    assert nx_isomorphic(induced_subgraph(c4, ["v1", "v2", "v3"]), F.path_graph(3))
    k33 = F.complete_bipartite(3, 3)
    sub = induced_subgraph(k33, ["l1", "l2", "r1", "r2"])
    assert nx_isomorphic(sub, F.complete_bipartite(2, 2), bip=True)
    assert induced_subgraph(c4, c4.vertices) == c4
    with pytest.raises(UnknownVertex):
        induced_subgraph(c4, ["zz"])


@given(graphs(max_n=6), st.data())
def test_induced_subgraph_composes(g, data):
    a = data.draw(st.sets(st.sampled_from(g.vertices)) if g.n else st.just(set()))
    b = data.draw(st.sets(st.sampled_from(sorted(a))) if a else st.just(set()))
    assert induced_subgraph(induced_subgraph(g, a), b) == induced_subgraph(g, b)


def test_two_ball_examples():
    p5 = F.path_graph(5)
    assert set(two_ball(p5, "x1").vertices) == {"x1", "x2", "x3"}
    s = F.star(3)
    assert set(two_ball(s, "c").vertices) == set(s.vertices)
    iso = Graph(["a"])
    assert two_ball(iso, "a").n == 0
    with pytest.raises(UnknownVertex):
        two_ball(p5, "q")


def test_blocks_examples():
    assert [b.m for b in blocks(F.path_graph(4))] == [1, 1, 1]
    assert len(blocks(F.complete_bipartite(2, 3))) == 1
    assert sorted(b.n for b in blocks(F.bowtie())) == [3, 3]


@given(graphs(max_n=7, loops=False))
def test_blocks_partition_edges(g):
    seen = []
    for b in blocks(g):
        seen.extend(frozenset(e) for e in b.edges)
    assert sorted(map(sorted, seen)) == sorted(map(sorted, (frozenset(e) for e in g.edges)))


def test_predicates():
    assert is_complete_bipartite(F.complete_bipartite(2, 3))
    assert is_complete_bipartite(F.empty_graph())
    assert is_complete_bipartite(F.single_vertex())
    assert not is_complete_bipartite(F.path_graph(4))
    k = F.reflexive_complete(3)
    assert is_reflexive_complete(k)
    loop = k.loops[0]
    edges = [e for e in k.edges if e != (loop, loop)]
    assert not is_reflexive_complete(Graph(k.vertices, edges))
    assert distance(F.cycle_graph(6), "v1", "v4") == 3
    assert is_bipartite_with_partition(F.complete_bipartite(2, 2))


@given(bipartite_graphs(max_n=6))
def test_two_colouring_agrees_with_given_sides(g):
    col = two_colouring(g)
    assert col is not None
    left, right = set(col[0]), set(col[1])
    for u, w in g.edges:
        assert (u in left) != (w in left)
    assert left | right == set(g.vertices)


@given(st.one_of(graphs(max_n=5), bipartite_graphs(max_n=5)))
def test_json_round_trip(g):
    assert loads(dumps(g)) == g
    doc = json.loads(dumps(g))
    assert graph_from_dict(doc) == g


def test_json_rejects_duplicates_with_diagnostic():
    doc = {"vertices": ["a", "b"], "edges": [["a", "b"], ["b", "a"]]}
    with pytest.raises(DuplicateEdge, match="a"):
        graph_from_dict(doc)
