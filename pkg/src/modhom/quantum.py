"""Quantum graphs, hom matrices over closed families, implementable vectors
and the oracle-only pinning reductions."""
from __future__ import annotations

import json
from itertools import combinations, product
from typing import Callable, Optional, Sequence

from . import linalg
from .errors import AssertionReport, InstanceTooLarge, NotReduced, SingularFamily, SolveFailure
from .graph import (LEFT, RIGHT, Graph, LabelledGraph, disjoint_union, graph_from_dict,
                    graph_to_dict, quotient)
from .homs import count_aut, count_bip_homs, count_homs, count_inj, count_surj
from .reduction import (canonical_form, has_order_p_automorphism, iter_automorphisms,
                        reduced_form)

MAX_FAMILY_N = 4


def _hom(flavor: str):
    return count_bip_homs if flavor == "bip" else count_homs


class QuantumGraph:
    """A formal combination Σ α_i F_i of pairwise non-isomorphic graphs.

    Isomorphic constituents are merged on construction; with ``p`` set the
    coefficients are stored as residues in [1, p-1].
    """

    __slots__ = ("constituents", "p", "flavor")

    def __init__(self, items: Sequence = (), p: Optional[int] = None, flavor: str = "plain"):
        merged: dict = {}
        reps: dict = {}
        order = []
        for g, c in items:
            key = canonical_form(g, flavor)
            if key not in merged:
                merged[key] = 0
                reps[key] = g
                order.append(key)
            merged[key] += int(c)
        out = []
        for key in order:
            c = merged[key] % p if p is not None else merged[key]
            if c:
                out.append((reps[key], c))
        self.constituents = tuple(out)
        self.p = p
        self.flavor = flavor

    @classmethod
    def single(cls, g: Graph, p=None, flavor="plain") -> "QuantumGraph":
        return cls([(g, 1)], p, flavor)

    def __iter__(self):
        return iter(self.constituents)

    def __len__(self) -> int:
        return len(self.constituents)

    @property
    def graphs(self) -> tuple:
        return tuple(g for g, _ in self.constituents)

    def coefficient(self, g: Graph) -> int:
        key = canonical_form(g, self.flavor)
        for h, c in self.constituents:
            if canonical_form(h, self.flavor) == key:
                return c
        return 0

    def to_json(self) -> list:
        return [{"graph": graph_to_dict(g), "coeff": c} for g, c in self.constituents]

    @classmethod
    def from_json(cls, doc, p=None, flavor="plain") -> "QuantumGraph":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls([(graph_from_dict(item["graph"]), int(item["coeff"])) for item in doc],
                   p, flavor)

    def __repr__(self) -> str:
        body = ", ".join(f"{c}*{g!r}" for g, c in self.constituents)
        return f"QuantumGraph([{body}], p={self.p})"


def normalize(q: QuantumGraph, p: int) -> QuantumGraph:
    """Replace constituents by their order-p reduced forms and merge mod p."""
    return QuantumGraph([(reduced_form(g, p, q.flavor), c) for g, c in q], p, q.flavor)


def count_homs_quantum(source, target, p: int, *, flavor: Optional[str] = None,
                       budget=None) -> int:
    """Σ_G Σ_H β_G α_H hom(G, H) mod p; either side may be a plain graph."""
    if not isinstance(source, QuantumGraph):
        source = [(source, 1)]
    if not isinstance(target, QuantumGraph):
        target = [(target, 1)]
    if flavor is None:
        flavor = next((q.flavor for q in (source, target) if isinstance(q, QuantumGraph)),
                      "plain")
    hom = _hom(flavor)
    kw = {} if budget is None else {"budget": budget}
    total = 0
    for g, b in source:
        for h, a in target:
            total += b * a * hom(g, h, **kw).value
    return total % p


# ----- closed families -------------------------------------------------------

def _plain_candidates(n: int):
    for k in range(n + 1):
        vs = [f"q{i}" for i in range(1, k + 1)]
        pairs = [(v, v) for v in vs] + list(combinations(vs, 2))
        for mask in range(1 << len(pairs)):
            yield Graph(vs, [e for i, e in enumerate(pairs) if mask >> i & 1])


def _bip_candidates(n: int):
    for a in range(n + 1):
        for b in range(n + 1):
            left = [f"l{i}" for i in range(1, a + 1)]
            right = [f"r{i}" for i in range(1, b + 1)]
            pairs = [(u, w) for u in left for w in right]
            for mask in range(1 << len(pairs)):
                yield Graph(left + right, [e for i, e in enumerate(pairs) if mask >> i & 1],
                            {LEFT: left, RIGHT: right})


_FAMILY_CACHE: dict = {}


def reduced_subgraph_family(n: int, p: int, flavor: str = "plain") -> list:
    """Order-p reduced subgraphs of K°_n (``bip``: of K_{n,n}) up to
    isomorphism, ordered by (|V|, |E|, #loops)."""
    if n > MAX_FAMILY_N:
        raise InstanceTooLarge(f"family enumeration limited to n <= {MAX_FAMILY_N}")
    key = (n, p, flavor)
    if key in _FAMILY_CACHE:
        return list(_FAMILY_CACHE[key])
    cands = _bip_candidates(n) if flavor == "bip" else _plain_candidates(n)
    unique: dict = {}
    for g in cands:
        unique.setdefault(canonical_form(g, flavor), g)
    fam = [(k, g) for k, g in unique.items() if not has_order_p_automorphism(g, p, flavor)]
    fam.sort(key=lambda kg: (kg[1].n, kg[1].m, len(kg[1].loops), kg[0]))
    out = [g for _, g in fam]
    _FAMILY_CACHE[key] = tuple(out)
    return out


class HomMatrix:
    __slots__ = ("family", "entries", "flavor", "p")

    def __init__(self, family, entries, flavor, p):
        self.family = list(family)
        self.entries = entries
        self.flavor = flavor
        self.p = p

    def __repr__(self):
        return f"HomMatrix(k={len(self.family)}, p={self.p}, flavor={self.flavor})"


def hom_matrix(family: Sequence, p: int, flavor: str = "plain",
               counter: Optional[Callable] = None) -> HomMatrix:
    """Entry (i, j) = hom(F_i, F_j) mod p.  ``counter`` overrides the count,
    which lets callers study families the Graph type cannot express."""
    if counter is None:
        hom = _hom(flavor)
        counter = lambda a, b: hom(a, b, budget=None).value
    entries = [[counter(a, b) % p for b in family] for a in family]
    return HomMatrix(family, entries, flavor, p)


def check_nonsingular(m: HomMatrix) -> tuple:
    """(nonsingular?, determinant residue)."""
    d = linalg.det(m.entries, m.p) if m.entries else 1
    return d != 0, d


def require_nonsingular(m: HomMatrix) -> HomMatrix:
    ok, _ = check_nonsingular(m)
    if not ok:
        raise SingularFamily("hom matrix is singular mod p; the family is not closed "
                             "under surjective homomorphic images")
    return m


def decomposition_matrices(family: Sequence, p: int, flavor: str = "plain") -> tuple:
    """(M_surj, D_aut, M_inj) with exact integer entries."""
    bip = flavor == "bip"
    surj = [[count_surj(a, b, bip=bip, budget=None).value for b in family] for a in family]
    inj = [[count_inj(a, b, bip=bip, budget=None).value for b in family] for a in family]
    aut = [count_aut(a, bip=bip, budget=None).value for a in family]
    return surj, aut, inj


def verify_decomposition(family: Sequence, p: int, flavor: str = "plain") -> bool:
    """M_hom ≡ M_surj · D_aut^{-1} · M_inj entrywise mod p."""
    surj, aut, inj = decomposition_matrices(family, p, flavor)
    k = len(family)
    dinv = [linalg.inv_mod(a, p) for a in aut]
    m = hom_matrix(family, p, flavor).entries
    for i in range(k):
        for j in range(k):
            s = sum(surj[i][t] * dinv[t] * inj[t][j] for t in range(k)) % p
            if s != m[i][j]:
                return False
    return True


def implement_vector(family: Sequence, v: Sequence[int], p: int, flavor: str = "plain",
                     matrix: Optional[HomMatrix] = None) -> QuantumGraph:
    """A quantum graph F̄ over ``family`` with hom(F̄, F_j) ≡ v_j for all j."""
    if len(v) != len(family):
        raise ValueError("vector length must match the family")
    m = matrix if matrix is not None else hom_matrix(family, p, flavor)
    x = linalg.solve_left(m.entries, [c % p for c in v], p)
    q = QuantumGraph([(f, c) for f, c in zip(family, x) if c], p, flavor)
    for j, f in enumerate(family):
        if count_homs_quantum(q, f, p, flavor=flavor) != v[j] % p:
            raise SolveFailure(f"implemented vector differs at position {j}")
    return q


# ----- oracle reductions -----------------------------------------------------

def _as_int(x) -> int:
    return int(x.value) if hasattr(x, "value") else int(x)


def _pinning_rows(graphs: Sequence, p: int, flavor: str, n: int) -> list:
    rows = list(reduced_subgraph_family(min(n, MAX_FAMILY_N), p, flavor))
    keys = {canonical_form(g, flavor) for g in rows}
    for g in graphs:
        k = canonical_form(g, flavor)
        if k not in keys:
            keys.add(k)
            rows.append(g)
    return rows


def pin_extract(oracle: Callable, hbar: QuantumGraph, g: Graph, i: int, p: int) -> int:
    """hom(G, H_i) mod p from an oracle for hom(·, H̄) mod p.

    A quantum graph F̄ implementing the standard vector of H_i is built over
    the reduced family of K°_n (n = max |V(H_k)|, square system).  Beyond the
    enumerable range the family is extended by the constituents and only the
    constituent columns are constrained.
    """
    flavor = hbar.flavor
    graphs = hbar.graphs
    for h in graphs:
        if has_order_p_automorphism(h, p, flavor):
            raise NotReduced("quantum target must be normalized")
    h_i, alpha = hbar.constituents[i]
    n = max((h.n for h in graphs), default=0)
    if n <= MAX_FAMILY_N:
        family = reduced_subgraph_family(n, p, flavor)
        keys = [canonical_form(f, flavor) for f in family]
        target = keys.index(canonical_form(h_i, flavor))
        fbar = implement_vector(family, [int(j == target) for j in range(len(family))], p,
                                flavor)
    else:
        rows = _pinning_rows(graphs, p, flavor, n)
        hom = _hom(flavor)
        mat = [[hom(r, h, budget=None).value % p for h in graphs] for r in rows]
        x = linalg.solve_left(mat, [int(k == i) for k in range(len(graphs))], p)
        fbar = QuantumGraph([(r, c) for r, c in zip(rows, x) if c], p, flavor)
    total = 0
    for f, beta in fbar:
        total += beta * _as_int(oracle(disjoint_union(g, f)))
    return total * linalg.inv_mod(alpha, p) % p


def _tuple_count(f: Graph, tup: Sequence, h: Graph, wtup: Sequence, flavor: str) -> int:
    """hom((F, t̄), (H, w̄)); t̄ may repeat vertices."""
    fixed = {}
    for t, w in zip(tup, wtup):
        if fixed.setdefault(t, w) != w:
            return 0
    return _hom(flavor)(LabelledGraph(f, fixed), h, budget=None).value


def tuple_orbits(h: Graph, r: int, flavor: str = "plain", sides: Optional[Sequence] = None):
    """Orbit representatives of V(H)^r (lexicographic first) with orbit sizes."""
    auts = list(iter_automorphisms(h, flavor))
    seen = set()
    out = []
    for tup in product(h.vertices, repeat=r):
        if sides is not None and any(h.side(v) != s for v, s in zip(tup, sides)):
            continue
        if tup in seen:
            continue
        orb = {tuple(a[v] for v in tup) for a in auts}
        seen |= orb
        out.append((tup, len(orb)))
    return out


def _glue(g: Graph, ubar: Sequence, f: Graph, tbar: Sequence) -> Graph:
    """G ⊔ F with u_k identified with t_k for every k."""
    union = disjoint_union(g, f)
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for u, t in zip(ubar, tbar):
        a, b = find(f"{u}#1"), find(f"{t}#2")
        if a != b:
            if b.endswith("#1") and not a.endswith("#1"):
                a, b = b, a
            parent[b] = a
    return quotient(union, {v: find(v) for v in union.vertices})


def recover_pinned_count(oracle: Callable, g: Graph, ubar: Sequence, h: Graph,
                         wbar: Sequence, p: int, flavor: str = "plain") -> int:
    """hom((G, ū), (H, w̄)) mod p using only unlabelled oracle calls.

    Uses hom(G', H) ≡ Σ_s |Orb(w̄_s)| hom((G', ū), (H, w̄_s)) over orbit
    representatives and a labelled quantum graph picking out the orbit of w̄.
    """
    ubar, wbar = tuple(ubar), tuple(wbar)
    if len(ubar) != len(wbar):
        raise ValueError("ū and w̄ must have equal length")
    if has_order_p_automorphism(h, p, flavor):
        raise NotReduced("target admits an automorphism of order p")
    if not ubar:
        return _as_int(oracle(g)) % p
    if len(set(ubar)) != len(ubar):
        raise ValueError("ū must consist of distinct vertices")
    sides = None
    if flavor == "bip":
        sides = [g.side(u) for u in ubar]
        if any(h.side(w) != s for w, s in zip(wbar, sides)):
            return 0
    reps = tuple_orbits(h, len(ubar), flavor, sides)
    for _, size in reps:
        if size % p == 0:
            raise AssertionReport("orbit size divisible by p in a reduced target")
    auts = list(iter_automorphisms(h, flavor))
    orbit_w = {tuple(a[v] for v in wbar) for a in auts}
    target = next(s for s, (rep, _) in enumerate(reps) if rep in orbit_w)
    rows = []
    for f in _pinning_rows([h], p, flavor, h.n):
        for tup, _ in tuple_orbits(f, len(ubar), flavor, sides):
            rows.append((f, tup))
    mat = [[_tuple_count(f, tup, h, rep, flavor) % p for rep, _ in reps] for f, tup in rows]
    x = linalg.solve_left(mat, [int(s == target) for s in range(len(reps))], p)
    total = 0
    for (f, tup), beta in zip(rows, x):
        if beta:
            total += beta * _as_int(oracle(_glue(g, ubar, f, tup)))
    return total * linalg.inv_mod(reps[target][1], p) % p
