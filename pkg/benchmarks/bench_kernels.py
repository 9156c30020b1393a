"""Time each kernel under the numba and numpy backends.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--json FILE]

Every workload goes through the public API so the numbers include the
surrounding Python.  Each backend is warmed up once before timing, so JIT
compilation is excluded.
"""

from __future__ import annotations

import argparse
import json
import random
import timeit

from lulc import _kernels, catalog
from lulc.graph import Graph, bipartite_isomorphic
from lulc.local import is_2_incident
from lulc.recognizer import lc_equivalent_linear
from lulc.reduction import reduce
from lulc.statevec import graph_state, two_lc_formula_states


def _random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def workloads():
    f1, f2 = catalog.fig1_pair(), catalog.fig2_pair()
    reduced, _ = reduce(f1.graph, f1.s)
    fig3 = catalog.fig3_graph()
    dense20 = _random_graph(20, 0.5, 1)
    c10, e10 = Graph.cycle(10), Graph.empty(10)
    return {
        "gray_search (C10 vs empty, 2^20 points)": lambda: lc_equivalent_linear(c10, e10),
        "permutation_match (fig1 reduced vs fig2)": lambda: bipartite_isomorphic(reduced, f2.split),
        "incidence_scan (fig2 split)": lambda: is_2_incident(f2.graph, f2.s),
        "graph_state_signs (n=20)": lambda: graph_state(dense20, max_qubits=20),
        "apply_1q (fig3 2-LC formula, 16 qubits)": lambda: two_lc_formula_states(fig3.graph, fig3.s),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5, help="timed runs per workload (best is kept)")
    ap.add_argument("--json", metavar="FILE", help="also write the results as JSON")
    args = ap.parse_args(argv)

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    rows = []
    for name, fn in workloads().items():
        times = {}
        for b in backends:
            with _kernels.use_backend(b):
                fn()  # warm-up
                times[b] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        rows.append({"workload": name, **{f"{b}_s": t for b, t in times.items()}})

    width = max(len(r["workload"]) for r in rows)
    print(f"{'workload':<{width}}  {'numpy s':>10}  {'numba s':>10}  {'speedup':>8}")
    for r in rows:
        nb = r.get("numba_s")
        speed = f"{r['numpy_s'] / nb:8.1f}" if nb else f"{'-':>8}"
        nb_txt = f"{nb:10.4f}" if nb else f"{'-':>10}"
        print(f"{r['workload']:<{width}}  {r['numpy_s']:10.4f}  {nb_txt}  {speed}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
