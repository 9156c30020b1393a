"""Acceptance criteria 1-10, one test each.

Every test records a PASS/FAIL line with its elapsed time and limit; the
lines are printed in the terminal summary and when the module is run as a
script.
"""

import itertools
import math
import random
import time
from contextlib import contextmanager
from math import comb
from pathlib import Path

import networkx as nx

from helpers import random_graph, random_split
from lulc import catalog
from lulc.graph import BipartiteSplit, Graph, VertexSet, bipartite_isomorphic
from lulc.graphio import parse_edgelist
from lulc.local import find_one_lc_witness, is_one_lc_witness, property_profile, two_local_complement
from lulc.recognizer import DEFAULT_DIM_CAP, Verdict, lc_equivalent_linear
from lulc.reduction import audit_step_invariants, reduce
from lulc.statevec import fidelity, lc_formula_states, pivot_formula_states, two_lc_formula_states
from lulc.triortho import check_lemma2, graph_to_matrix, is_unital
from test_supporting_lemmas import (
    INSTANCES,
    check_1lc_xrotation,
    check_2lc_xrotation,
    check_all_odd_after_pivoting,
    check_angle_is_0,
    check_notwins_nodeg1,
    check_pivot_preserves,
    notwins_nodeg1_conclusion,
    notwins_nodeg1_premise,
)
from test_recognizer import cross_validate_atlas, cross_validate_random
from test_triortho import matrix_condition_agreement

RESULTS: dict[int, str] = {}
FIDELITY_TOL = 1e-9
FIXTURES = Path(__file__).parent / "fixtures"


@contextmanager
def criterion(num: int, title: str, limit: float):
    """Record PASS only when the body succeeds within ``limit`` seconds."""
    info: dict = {}
    start = time.perf_counter()
    ok = False
    try:
        yield info
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        on_time = elapsed < limit
        status = "PASS" if ok and on_time else "FAIL"
        extra = "".join(f" {k}={v}" for k, v in info.items())
        RESULTS[num] = f"criterion {num:2d} {status}: {title} ({elapsed:.2f}s < {limit:g}s){extra}"
        print(RESULTS[num])
    assert on_time, RESULTS[num]


def test_criterion_01_fig3_fixpoint():
    with criterion(1, "fig3 2-LC fixpoint", 1.0):
        e = catalog.fig3_graph()
        assert e.graph.n == 16 and len(e.s) == 11
        assert two_local_complement(e.graph, e.s) == e.graph


def test_criterion_02_fig4_collapse():
    with criterion(2, "fig4 2-LC collapses to a 1-LC", 1.0):
        e = catalog.fig4_graph()
        h = two_local_complement(e.graph, e.s)
        created = set(h.edges()) - set(e.graph.edges())
        names = {tuple(sorted(e.names[v] for v in edge)) for edge in created}
        assert names == {(5, 6), (5, 7), (6, 7)}
        assert not set(e.graph.edges()) - set(h.edges())
        assert find_one_lc_witness(e.graph, e.s) is not None
        assert is_one_lc_witness(e.graph, e.s, [e.index_of((5, 6, 7))])


def test_criterion_03_fig1_fig2_pairs():
    with criterion(3, "fig1/fig2 2-LC companions, no 1-LC witness", 5.0):
        for e in (catalog.fig1_pair(), catalog.fig2_pair()):
            assert two_local_complement(e.graph, e.s) == e.companion
            assert find_one_lc_witness(e.graph, e.s) is None


def test_criterion_04_reduction():
    with criterion(4, "fig1 reduces to fig2, fig2 is fixed", 10.0):
        f1, f2 = catalog.fig1_pair(), catalog.fig2_pair()
        out, trace = reduce(f1.graph, f1.s)
        assert out.graph.n == 28 and bipartite_isomorphic(out, f2.split)
        assert audit_step_invariants(trace, f1.graph, f1.s, expensive=True).ok
        same, empty = reduce(f2.graph, f2.s)
        assert len(empty) == 0 and same.graph == f2.graph and same.s == f2.s
        assert audit_step_invariants(empty, f2.graph, f2.s, expensive=True).ok


def test_criterion_05_matrix_bridge():
    with criterion(5, "matrix conditions match p2-p4", 60.0) as info:
        for e in (catalog.fig3_graph(), catalog.fig2_pair()):
            gm = graph_to_matrix(e.split)
            assert check_lemma2(gm).all() and is_unital(gm)
        info["positives"] = matrix_condition_agreement(500)
        assert info["positives"] >= 100


def test_criterion_06_state_vector_oracle():
    with criterion(6, "unitary formulas against state vectors", 120.0) as info:
        rng = random.Random(6)
        worst = 1.0
        for _ in range(50):
            g = random_graph(rng, rng.randint(1, 8), rng.uniform(0.2, 0.8))
            worst = min(worst, fidelity(*lc_formula_states(g, rng.randrange(g.n))))
        pivots = 0
        while pivots < 50:
            g, s = random_split(rng, rng.randint(1, 5), rng.randint(1, 5))
            if not g.edges():
                continue
            u, v = rng.choice(g.edges())
            worst = min(worst, fidelity(*pivot_formula_states(BipartiteSplit(g, s), u, v)))
            pivots += 1
        worst = min(worst, fidelity(*two_lc_formula_states(Graph.cycle(4), VertexSet.of(4, [1, 3]))))
        e = catalog.fig3_graph()
        worst = min(worst, fidelity(*two_lc_formula_states(e.graph, e.s)))
        info["min_fidelity"] = f"{worst:.15f}"
        assert worst >= 1 - FIDELITY_TOL


def test_criterion_07_supporting_lemmas():
    with criterion(7, "supporting lemma suite", 300.0) as info:
        counts = {
            "angle_is_0": check_angle_is_0(random.Random(70)),
            "1lc_Xrotation": check_1lc_xrotation(random.Random(71)),
            "2lc_Xrotation": sum(check_2lc_xrotation(random.Random(72))),
            "pivoting_preserves_properties": check_pivot_preserves(random.Random(73))[1],
            "all_odd_after_pivoting": check_all_odd_after_pivoting(random.Random(74)),
            "notwins_nodeg1": check_notwins_nodeg1(random.Random(75)),
        }
        assert all(c >= INSTANCES for c in counts.values()), counts
        for name in ("fig2", "fig3", "fig4"):
            e = catalog.get(name)
            assert notwins_nodeg1_premise(e.graph, e.s) and notwins_nodeg1_conclusion(e.graph, e.s)
        info["min_instances"] = min(counts.values())


def test_criterion_08_recognizer_cross_validation():
    with criterion(8, "LINEAR agrees with ORBIT", 300.0) as info:
        pairs, _ = cross_validate_atlas(6)
        agree, _ = cross_validate_random(500)
        k3p3 = lc_equivalent_linear(Graph.complete(3), Graph.path(3))
        assert k3p3.verdict is Verdict.EQUIVALENT
        info["atlas_pairs"] = pairs
        info["random_pairs"] = agree


def test_criterion_09_fig1_not_lc_equivalent():
    with criterion(9, "fig1 pair is not LC-equivalent", 600.0) as info:
        e = catalog.fig1_pair()
        dec = lc_equivalent_linear(e.graph, e.companion)
        info["verdict"] = dec.verdict.value
        info["dimension"] = dec.metadata["dimension"]
        if dec.verdict is Verdict.INCONCLUSIVE:
            assert dec.metadata["dimension"] > DEFAULT_DIM_CAP
        else:
            assert dec.verdict is Verdict.NOT_EQUIVALENT


def _corpus():
    for name in catalog.CATALOG:
        e = catalog.get(name)
        yield e.graph
        if e.companion is not None:
            yield e.companion
    for path in sorted(FIXTURES.glob("*.el")):
        yield parse_edgelist(path.read_text())
    for G in nx.graph_atlas_g():
        yield Graph.from_edges(G.number_of_nodes(), G.edges())


def test_criterion_10_counting_facts():
    with criterion(10, "counting and handshake facts", 1.0) as info:
        assert len(catalog.fig1_pair().top) == 21 == comb(6, 5) + comb(6, 4)
        assert len(catalog.fig2_pair().top) == 21 == comb(7, 5)
        assert catalog.fig3_graph().graph.n == 16
        assert catalog.fig4_graph().graph.n == 24
        odd = 0
        for g in _corpus():
            if g.n and all(d % 2 for d in g.degrees()):
                assert g.n % 2 == 0
                odd += 1
        info["all_odd_graphs"] = odd
        assert odd > 0


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
