"""Compare the compiled and pure-Python counting kernels.

    python3 benchmarks/bench_kernel.py [--repeat 3]

Each row times count_homs on one (source, target) pair under both backends
and checks that the counts agree.
"""
import argparse
import time

from modhom import families as F
from modhom import kernels
from modhom.graph import disjoint_union
from modhom.homs import count_homs

CASES = [
    ("P10 -> K°5", lambda: (F.path_graph(10), F.reflexive_complete(5))),
    ("C9 -> K°5", lambda: (F.cycle_graph(9), F.reflexive_complete(5))),
    ("K3 x2 -> K°5", lambda: (disjoint_union(F.complete_graph(3), F.complete_graph(3)),
                             F.reflexive_complete(5))),
    ("P14 -> C8", lambda: (F.path_graph(14), F.cycle_graph(8))),
    ("K33-e -> K°4", lambda: (F.k33_minus_edge(), F.reflexive_complete(4))),
]


def _time(g, h, backend, repeat):
    kernels.set_backend(backend)
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = count_homs(g, h, budget=None).value
        best = min(best, time.perf_counter() - t0)
    return value, best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = ["python"] + (["native"] if kernels.NATIVE_AVAILABLE else [])
    print(f"{'case':<16}{'count':>12}" + "".join(f"{b + ' (s)':>14}" for b in backends)
          + ("     speedup" if len(backends) == 2 else ""))
    try:
        for name, make in CASES:
            g, h = make()
            res = [_time(g, h, b, args.repeat) for b in backends]
            if len({v for v, _ in res}) != 1:
                raise SystemExit(f"{name}: backends disagree: {res}")
            row = f"{name:<16}{res[0][0]:>12}" + "".join(f"{t:>14.4f}" for _, t in res)
            if len(res) == 2:
                row += f"{res[0][1] / res[1][1]:>12.1f}x"
            print(row)
    finally:
        kernels.set_backend("auto")
    if len(backends) == 1:
        print("native kernel not built; only the Python backend was timed")


if __name__ == "__main__":
    main()
