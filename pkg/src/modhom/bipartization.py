"""H ↦ H ⊗ K2 with the fixed (copy-0, copy-1) bipartition."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import AssertionReport, MissingBipartition
from .graph import LEFT, RIGHT, Graph, component_vertex_sets, induced_subgraph
from .homs import count_bip_homs, count_homs
from .reduction import has_order_p_automorphism


def left_copy(v) -> str:
    return f"{v}:0"


def right_copy(v) -> str:
    return f"{v}:1"


def bipartize(h: Graph) -> Graph:
    """Tensor with K2.  Vertex v yields ``v:0`` on L and ``v:1`` on R, and
    ``u:0 ~ w:1`` iff u ~ w in H (a loop at v gives the edge v:0 - v:1)."""
    left = [left_copy(v) for v in h.vertices]
    right = [right_copy(v) for v in h.vertices]
    adj = {x: set() for x in left + right}
    for u in h.vertices:
        for w in h.neighbours(u):
            adj[left_copy(u)].add(right_copy(w))
            adj[right_copy(w)].add(left_copy(u))
    side = {x: LEFT for x in left}
    side.update({x: RIGHT for x in right})
    return Graph._build(left + right, adj, side)


def check_partitionwise_reduced_after_bipartize(h: Graph, p: int) -> bool:
    """True iff H ⊗ K2 has no partition-preserving automorphism of order p."""
    return not has_order_p_automorphism(bipartize(h), p, "bip")


@dataclass
class ParsimonyReport:
    bip_count: int
    plain_count: int

    @property
    def equal(self) -> bool:
        return self.bip_count == self.plain_count


def verify_parsimonious(g: Graph, h: Graph, *, budget=None) -> ParsimonyReport:
    """Check hom^bip(G, H ⊗ K2) = hom(G, H) exactly for bipartite G."""
    if not g.has_bipartition:
        raise MissingBipartition("G needs a fixed bipartition")
    kw = {} if budget is None else {"budget": budget}
    rep = ParsimonyReport(count_bip_homs(g, bipartize(h), **kw).value,
                          count_homs(g.forget_bipartition(), h, **kw).value)
    if not rep.equal:
        raise AssertionReport(f"hom^bip = {rep.bip_count} but hom = {rep.plain_count}")
    return rep


def side_flip_factor(g: Graph, h: Graph) -> tuple:
    """(hom(G, H'), hom^bip(G, H')) for H' = H ⊗ K2; the first is twice the
    second for connected bipartite G with at least one vertex."""
    hp = bipartize(h)
    return (count_homs(g.forget_bipartition(), hp.forget_bipartition()).value,
            count_bip_homs(g, hp).value)


def bipartite_components(h: Graph) -> list:
    """Components of a bipartitioned graph, each keeping its sides."""
    return [induced_subgraph(h, c) for c in component_vertex_sets(h)]
