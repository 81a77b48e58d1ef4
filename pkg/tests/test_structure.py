from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from modhom import families as F
from modhom import structure as S
from modhom.errors import NotForbiddenFree, UnknownVertex
from modhom.graph import (Graph, common_neighbourhood, connected_components, induced_subgraph,
                          is_complete_bipartite, is_connected, two_ball)
from modhom.reduction import has_order_p_automorphism

from helpers import bipartite_graphs, nx_isomorphic

PRIMES = st.sampled_from([2, 3])


def _sided(g):
    return S.with_sides(g)


def _two_k22_sharing_vertex(pendants=()):
    edges = [("a1", "s"), ("a1", "t1"), ("b1", "s"), ("b1", "t1"),
             ("s", "a2"), ("s", "b2"), ("t2", "a2"), ("t2", "b2")]
    verts = ["a1", "b1", "s", "t1", "a2", "b2", "t2"]
    for i, x in enumerate(pendants):
        verts.append(f"q{i}")
        edges.append((x, f"q{i}"))
    return _sided(Graph(verts, edges))


def _caterpillar():
    # spine v0..v4 with one extra leaf at each of v1, v2, v3
    return _sided(Graph(["v0", "v1", "w1", "v2", "x2", "v3", "w3", "v4"],
                        [("v0", "v1"), ("v1", "w1"), ("v1", "v2"), ("v2", "x2"),
                         ("v2", "v3"), ("v3", "w3"), ("v3", "v4")]))


def _pattern_free_by_networkx(h):
    """Independent induced search using networkx isomorphism."""
    pats = [F.k33_minus_edge(), F.domino()]
    for combo in combinations(h.vertices, 6):
        sub = induced_subgraph(h, combo)
        if sub.m in (7, 8) and any(nx_isomorphic(sub, q) for q in pats):
            return False
    return True


def test_forbidden_examples():
    assert S.is_forbidden_free(F.complete_bipartite(3, 3)).free
    rep = S.is_forbidden_free(F.domino())
    assert not rep.free and set(rep.witness) == set(F.domino().vertices)
    assert S.is_forbidden_free(_sided(F.cycle_graph(6))).free
    assert not S.is_forbidden_free(F.k33_minus_edge()).free


@settings(max_examples=80)
@given(bipartite_graphs(max_n=8))
def test_forbidden_deciders_agree(h):
    a = S.is_forbidden_free(h).free
    assert a == S.is_forbidden_free_by_splits(h)
    assert a == _pattern_free_by_networkx(h)


def test_split_examples():
    s = S.split_at(F.star(4), "c")
    assert [(c.count, c.representative.n, c.representative.m) for c in s.classes] == [(4, 2, 1)]
    s = S.split_at(F.path_graph(5), "x3")
    assert [(c.count, c.representative.n) for c in s.classes] == [(2, 3)]
    assert nx_isomorphic(s.classes[0].representative, F.path_graph(3))
    with pytest.raises(UnknownVertex):
        S.split_at(F.star(2), "zz")


@given(bipartite_graphs(min_n=1, max_n=7))
def test_split_reconstructs_components(h):
    for v in h.vertices:
        ball = two_ball(h, v)
        if ball.n == 0:
            continue
        sp = S.split_at(h, v)
        rest = induced_subgraph(ball, [w for w in ball.vertices if w != v])
        assert sp.n_components == len(connected_components(rest))
        for u in sp.components():
            assert v in u
        covered = sorted(w for u in sp.components() for w in u.vertices if w != v)
        assert covered == sorted(w for w in ball.vertices if w != v)


def test_complete_core_examples():
    k23 = F.complete_bipartite(2, 3)
    core = S.complete_core(k23, "l1", "r1")
    assert core.shape == (2, 3) and core.core.n == 5
    # one neighbour in U: the core is the star U itself
    assert S.complete_core(F.path_graph(4), "x2", "x3").shape == (2, 1)
    back = S.complete_core(k23, "r1", "l1")
    assert set(back.core.vertices) == set(core.core.vertices)
    with pytest.raises(NotForbiddenFree):
        S.complete_core(F.domino(), "a2", "b2")


@given(bipartite_graphs(max_n=7))
def test_cores_are_complete(h):
    if not S.is_forbidden_free(h).free:
        return
    for u, w in h.edges:
        core = S.complete_core(h, u, w)
        assert is_complete_bipartite(core.core)
        assert u in core.left


def test_square_free_examples():
    assert S.is_p_square_free(_sided(F.cycle_graph(6)), 3)[0]
    ok, wit = S.is_p_square_free(F.complete_bipartite(2, 3), 3)
    assert not ok and sorted(wit.shape) == [2, 3]
    assert not S.is_p_square_free(F.complete_bipartite(2, 2), 2)[0]


def test_hard_vertex_examples():
    # K22 with a pendant leaf on one side
    h = _sided(Graph(["a1", "a2", "b1", "b2", "q"],
                     [("a1", "b1"), ("a1", "b2"), ("a2", "b1"), ("a2", "b2"), ("a1", "q")]))
    hv = S.find_hard_vertex(h, 3)
    assert hv is not None
    assert not all(is_complete_bipartite(c) for c in connected_components(hv.reduced))
    for a, b in [(2, 3), (3, 3), (1, 4)]:
        assert S.find_hard_vertex(F.complete_bipartite(a, b), 3) is None
    hv = S.find_hard_vertex(_sided(F.path_graph(5)), 3, 0)
    assert hv is not None and hv.subset == ()


def test_cycle_examples():
    for p in (2, 3, 5):
        c = S.find_hardness_cycle(_sided(F.cycle_graph(6)), p)
        assert c is not None and c.multiplicities == (1,) * 6
    assert S.find_hardness_cycle(_sided(F.cycle_graph(4)), 2) is None
    c6 = F.cycle_graph(6)
    dup = _sided(Graph(list(c6.vertices) + ["w"], list(c6.edges) + [("v1", "w"), ("w", "v3")]))
    c = S.find_hardness_cycle(dup, 3)
    assert sorted(c.multiplicities) == [1, 1, 1, 1, 1, 2]


@settings(max_examples=60)
@given(bipartite_graphs(max_n=9), PRIMES)
def test_reported_cycles_satisfy_definition(h, p):
    c = S.find_hardness_cycle(h, p)
    if c is None:
        return
    k = len(c.groups)
    assert k >= 6
    for i in range(k):
        nxt = set(c.groups[(i + 1) % k])
        assert len(nxt) % p
        for x in c.groups[i]:
            for y in c.groups[(i + 2) % k]:
                assert set(common_neighbourhood(h, [x, y])) == nxt


def test_hardness_path_examples():
    gp = S.find_generalized_hardness_path(F.star(3), 2)
    assert gp is not None and gp.length == 2
    gp = S.find_generalized_hardness_path(_caterpillar(), 2)
    assert gp.length == 4
    assert S.walks_stay_on_path(_caterpillar(), gp)
    # every core of a bare path has an even left side
    assert S.find_generalized_hardness_path(F.path_graph(5), 2) is None
    assert S.find_generalized_hardness_path(F.path_graph(3), 2, start="x1") is None


@settings(max_examples=60)
@given(bipartite_graphs(min_n=3, max_n=8, connected=True), PRIMES)
def test_reported_paths_satisfy_definition(h, p):
    if not S.is_forbidden_free(h).free:
        return
    gp = S.find_generalized_hardness_path(h, p)
    if gp is None:
        return
    ell = len(gp.spine) - 1
    assert ell >= 2 and ell % 2 == 0
    sub = induced_subgraph(h, gp.spine)
    assert nx_isomorphic(sub, F.path_graph(len(gp.spine)))
    for i in range(1, ell, 2):
        a, b = S.complete_core(h, gp.spine[i - 1], gp.spine[i]).shape
        assert a % p == 1 % p and b % p
        assert len(gp.groups[i]) == b
        if i <= ell - 3:
            assert h.degree(gp.spine[i + 1]) % p == b % p
    assert gp.terminal_case in ("i", "ii", "iii")
    # walk confinement presumes a reduced host without hard vertices
    if ell <= 8 and not has_order_p_automorphism(h, p, "bip") \
            and S.find_hard_vertex(h, p) is None:
        assert S.walks_stay_on_path(h, gp)


def test_dead_end_examples():
    ends = {d.vertex: d for d in S.find_dead_ends(_sided(F.path_graph(6)))}
    assert "x1" in ends and "x6" in ends
    star = {d.vertex: d for d in S.find_dead_ends(_sided(F.star(3)))}
    assert star["c"].suitable_no_exit
    assert S.find_dead_ends(_sided(F.cycle_graph(8))) == []


@settings(max_examples=80)
@given(bipartite_graphs(min_n=2, max_n=9, connected=True))
def test_no_long_cycle_gives_suitable_dead_end(h):
    if any(len(c) >= 6 for c in nx.chordless_cycles(h.to_networkx())):
        return
    assert any(d.suitable for d in S.find_dead_ends(h))


def test_mosaic_examples():
    q = S.find_mosaic_path(_two_k22_sharing_vertex(), 2)
    assert q is not None and q.length == 2
    q = S.find_mosaic_path(F.complete_bipartite(2, 3), 3)
    assert q is not None and q.length == 1
    assert S.find_mosaic_path(_sided(F.cycle_graph(6)), 2) is None


@settings(max_examples=40)
@given(bipartite_graphs(min_n=3, max_n=8, connected=True), PRIMES)
def test_mosaic_cores_have_multiple_of_p(h, p):
    if not S.is_forbidden_free(h).free:
        return
    q = S.find_mosaic_path(h, p)
    if q is None:
        return
    for x, y in zip(q.spine, q.spine[1:]):
        a, b = S.complete_core(h, x, y).shape
        assert a > 0 and b % p == 0


def test_radius_two():
    assert S.has_radius_at_most_two(F.star(4)) is not None
    assert S.has_radius_at_most_two(_sided(F.path_graph(6))) is None
