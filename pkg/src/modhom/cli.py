"""Command-line front end.  Every command prints one JSON document."""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import dichotomy, gadgets, quantum, structure, surjective
from .bipartization import bipartize
from .errors import GraphError, InstanceTooLarge, ModhomError
from .graph import DistinguishedGraph, Graph, graph_from_dict, graph_to_dict, loads
from .homs import count_aut, count_bip_homs, count_homs, count_inj, count_surj
from .reduction import reduce

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_TOO_LARGE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _graph(path: str) -> Graph:
    g = loads(_read(path))
    return g.graph if isinstance(g, DistinguishedGraph) else g


def _dist(path: str) -> DistinguishedGraph:
    g = loads(_read(path))
    return g if isinstance(g, DistinguishedGraph) else DistinguishedGraph(g)


def _json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None


def _quantum(path: str, p=None, flavor="plain") -> quantum.QuantumGraph:
    doc = _json(path)
    if isinstance(doc, dict) and "vertices" in doc:
        return quantum.QuantumGraph.single(graph_from_dict(doc), p, flavor)
    if not isinstance(doc, list):
        raise InputError(f"{path}: quantum graph must be a list of {{graph, coeff}}")
    return quantum.QuantumGraph.from_json(doc, p, flavor)


def _count_doc(value: int, p) -> dict:
    doc = {"count": value}
    if p is not None:
        doc["mod"] = p
        doc["residue"] = value % p
    return doc


# ----- commands ------------------------------------------------------------------

def cmd_count(a):
    h = _graph(a.target)
    if a.flavor == "aut":
        return _count_doc(count_aut(h, bip=h.has_bipartition and a.bip_aut).value, a.mod)
    if a.source is None:
        raise InputError("count needs a source graph")
    g = _graph(a.source)
    fn = {"hom": count_homs, "bip": count_bip_homs}.get(a.flavor)
    if fn is not None:
        return _count_doc(fn(g, h).value, a.mod)
    fn = {"inj": count_inj, "surj": count_surj}[a.flavor]
    return _count_doc(fn(g, h).value, a.mod)


def cmd_reduce(a):
    h = _dist(a.target) if a.flavor == "dist" else _graph(a.target)
    if a.flavor == "dist":
        tr = surjective.dist_reduce(h, a.p)
        return tr.to_json()
    tr = reduce(h, a.p, a.flavor)
    return {"reduced": graph_to_dict(tr.result), "trace": dichotomy._trace_json(tr),
            "p": a.p, "flavor": a.flavor}


def cmd_bipartize(a):
    return graph_to_dict(bipartize(_graph(a.target)))


def cmd_quantum(a):
    flavor = a.flavor
    if a.action == "normalize":
        return quantum.normalize(_quantum(a.files[0], a.p, flavor), a.p).to_json()
    if a.action == "count":
        g, q = _graph(a.files[0]), _quantum(a.files[1], a.p, flavor)
        return {"residue": quantum.count_homs_quantum(g, q, a.p, flavor=flavor), "mod": a.p}
    if a.action == "implement":
        fam = quantum.reduced_subgraph_family(a.n, a.p, flavor)
        vec = [int(x) for x in a.vector.split(",")] if a.vector else None
        if vec is None or len(vec) != len(fam):
            raise InputError(f"--vector needs {len(fam)} comma-separated entries")
        q = quantum.implement_vector(fam, vec, a.p, flavor)
        return {"family": [graph_to_dict(f) for f in fam], "implementation": q.to_json()}
    if a.action == "pin-extract":
        g, q = _graph(a.files[0]), _quantum(a.files[1], a.p, flavor)
        q = quantum.normalize(q, a.p)

        def oracle(x):
            return quantum.count_homs_quantum(x, q, a.p, flavor=flavor)

        return {"constituent": graph_to_dict(q.graphs[a.index]),
                "residue": quantum.pin_extract(oracle, q, g, a.index, a.p), "mod": a.p}
    raise InputError(f"unknown quantum action {a.action}")


def _need(a, *names):
    for n in names:
        if getattr(a, n) is None:
            raise InputError(f"--{n} is required for structure {a.action}")


def cmd_structure(a):
    h = structure.with_sides(_graph(a.target))
    act = a.action
    if act == "forbidden-free":
        return structure.is_forbidden_free(h).to_json()
    if act == "split":
        _need(a, "vertex")
        return structure.split_at(h, a.vertex).to_json()
    if act == "core":
        _need(a, "vertex", "neighbour")
        return structure.complete_core(h, a.vertex, a.neighbour).to_json()
    _need(a, "p")
    if act == "square-free":
        ok, core = structure.is_p_square_free(h, a.p)
        return {"square_free": ok, "witness": core.to_json() if core else None}
    if act == "hard-vertex":
        hv = structure.find_hard_vertex(h, a.p)
        return {"hard_vertex": None if hv is None else
                {"vertex": hv.vertex, "subset": list(hv.subset),
                 "reduced": graph_to_dict(hv.reduced)}}
    if act == "cycle":
        c = structure.find_hardness_cycle(h, a.p)
        return {"cycle": None if c is None else c.to_json()}
    if act == "path":
        gp = structure.find_generalized_hardness_path(h, a.p, a.vertex)
        return {"path": None if gp is None else gp.to_json()}
    if act == "mosaic":
        q = structure.find_mosaic_path(h, a.p)
        return {"mosaic": None if q is None else q.to_json()}
    raise InputError(f"unknown structure action {act}")


def cmd_gadget(a):
    if a.action == "find":
        return gadgets.find_gadget(_graph(a.files[0]), a.p).to_json()
    if a.action == "verify":
        h = structure.with_sides(_graph(a.files[0]))
        gadget = gadgets.gadget_from_dict(_json(a.files[1]))
        if isinstance(gadget, gadgets.HardnessGadget):
            return gadgets.verify_hardness_gadget(h, a.p, gadget).to_json()
        return gadgets.verify_bp_gadget(h, a.p, gadget).to_json()
    if a.action == "bis-reduce":
        g = structure.with_sides(_graph(a.files[0]))
        h = _graph(a.files[1])
        chain = gadgets.find_gadget(h, a.p)
        target = chain.final.target
        res = gadgets.reduce_bis_to_biphoms(g, chain.final.gadget, target, a.p)
        return {"target": graph_to_dict(target), "weights": list(chain.final.gadget.weights),
                "hom_bip": res.lhs, "weighted_bis": res.rhs, "mod": a.p, "holds": res.holds,
                "constructed": graph_to_dict(res.graph.graph)}
    raise InputError(f"unknown gadget action {a.action}")


def cmd_classify(a):
    h = _graph(a.target)
    if a.bip:
        if not h.has_bipartition:
            raise InputError("--bip needs a graph with a bipartition")
        return dichotomy.classify_bip_homs(h, a.p).to_json()
    return dichotomy.classify_homs(h, a.p).to_json()


def cmd_surj(a):
    if a.action == "count":
        g, hd = _graph(a.files[0]), _dist(a.files[1])
        return _count_doc(surjective.count_part_surj(g, hd), a.p)
    if a.action == "expand":
        q = surjective.expand_inclusion_exclusion(_dist(a.files[0]), a.p)
        return q.to_json()
    if a.p is None:
        raise InputError(f"surj {a.action} needs --p")
    if a.action == "classify":
        hd = _dist(a.files[0])
        if a.preset == "vertex-surjective":
            hd = surjective.vertex_surjective(hd.graph)
        elif a.preset == "compaction":
            hd = surjective.compaction(hd.graph)
        return surjective.classify_part_surj(hd, a.p).to_json()
    if a.action == "compaction":
        return surjective.classify_compaction(_graph(a.files[0]), a.p).to_json()
    raise InputError(f"unknown surj action {a.action}")


def _random_graph(rng: random.Random, n: int, loops: bool) -> Graph:
    vs = [f"v{i}" for i in range(n)]
    es = [(vs[i], vs[j]) for i in range(n) for j in range(i if loops else i + 1, n)
          if rng.random() < 0.4]
    return Graph(vs, es)


def cmd_selftest(a):
    """Randomized oracle checks: bipartization parsimony and inclusion-exclusion."""
    from .bipartization import verify_parsimonious
    rng = random.Random(a.seed)
    results = {"seed": a.seed, "trials": a.trials, "bipartization": 0, "inclusion_exclusion": 0}
    for _ in range(a.trials):
        gb =_random_graph(rng, rng.randint(1, 5), False)
        try:
            gb = structure.with_sides(gb)
        except GraphError:
            gb = None
        h = _random_graph(rng, rng.randint(1, 4), True)
        if gb is not None:
            verify_parsimonious(gb, h)
            results["bipartization"] += 1
        hd = DistinguishedGraph(h, [v for v in h.vertices if rng.random() < 0.5],
                                [e for e in h.edges if rng.random() < 0.3])
        g = _random_graph(rng, rng.randint(0, 4), False)
        q = surjective.expand_inclusion_exclusion(hd)
        if surjective.count_part_surj(g, hd) != surjective.count_via_expansion(g, q):
            raise ModhomError("inclusion-exclusion expansion disagrees with brute force")
        results["inclusion_exclusion"] += 1
    return results


# ----- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="modhom", description=__doc__)
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="count homomorphisms of a given flavor")
    c.add_argument("--mod", type=int)
    c.add_argument("--flavor", choices=["hom", "bip", "inj", "surj", "aut"], default="hom")
    c.add_argument("--bip-aut", action="store_true", help="aut: preserve the bipartition")
    c.add_argument("source", nargs="?")
    c.add_argument("target")
    c.set_defaults(func=cmd_count)

    r = sub.add_parser("reduce", parents=[common], help="order-p reduced form with trace")
    r.add_argument("--flavor", choices=["plain", "bip", "dist"], default="plain")
    r.add_argument("--p", type=int, required=True)
    r.add_argument("target")
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("bipartize", parents=[common], help="tensor with K2")
    b.add_argument("target")
    b.set_defaults(func=cmd_bipartize)

    q = sub.add_parser("quantum", parents=[common], help="quantum graph operations")
    q.add_argument("action", choices=["normalize", "count", "implement", "pin-extract"])
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--flavor", choices=["plain", "bip"], default="plain")
    q.add_argument("--n", type=int, default=2)
    q.add_argument("--vector")
    q.add_argument("--index", type=int, default=0)
    q.add_argument("files", nargs="*")
    q.set_defaults(func=cmd_quantum)

    s = sub.add_parser("structure", parents=[common], help="structural analysis of bipartite graphs")
    s.add_argument("action", choices=["forbidden-free", "split", "core", "square-free",
                                      "hard-vertex", "cycle", "path", "mosaic"])
    s.add_argument("--p", type=int)
    s.add_argument("--vertex")
    s.add_argument("--neighbour")
    s.add_argument("target")
    s.set_defaults(func=cmd_structure)

    g = sub.add_parser("gadget", parents=[common], help="gadget search, verification and reduction")
    g.add_argument("action", choices=["verify", "find", "bis-reduce"])
    g.add_argument("--p", type=int, required=True)
    g.add_argument("files", nargs="+")
    g.set_defaults(func=cmd_gadget)

    k = sub.add_parser("classify", parents=[common], help="classify a target graph")
    k.add_argument("--bip", action="store_true")
    k.add_argument("--p", type=int, required=True)
    k.add_argument("target")
    k.set_defaults(func=cmd_classify)

    u = sub.add_parser("surj", parents=[common], help="partially surjective homomorphisms")
    u.add_argument("action", choices=["count", "expand", "classify", "compaction"])
    u.add_argument("--p", "--mod", dest="p", type=int)
    u.add_argument("--preset", choices=["none", "vertex-surjective", "compaction"],
                   default="none")
    u.add_argument("files", nargs="+")
    u.set_defaults(func=cmd_surj)

    t = sub.add_parser("selftest", parents=[common], help="randomized oracle cross-checks (uses --seed)")
    t.add_argument("--trials", type=int, default=50)
    t.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        out = args.func(args)
    except InstanceTooLarge as exc:
        print(f"modhom: instance too large: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (InputError, GraphError, KeyError, TypeError, ValueError) as exc:
        print(f"modhom: malformed input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ModhomError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True))
        return EXIT_FAIL
    print(json.dumps(out, sort_keys=True, indent=2, default=str))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
