import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_2incident, random_graph, random_independent, two_incident_instances
from lulc import catalog
from lulc.errors import PreconditionError
from lulc.graph import Graph, VertexSet, local_complement
from lulc.local import (
    NotTwoIncidentError,
    common_count,
    find_one_lc_witness,
    is_2_incident,
    is_one_lc_witness,
    one_local_complement,
    property_profile,
    two_local_complement,
    witness_system,
)

# 4-cycle u-s1-v-s2-u with u=0, s1=1, v=2, s2=3
C4 = Graph.cycle(4)
C4_S = VertexSet.of(4, [1, 3])
PATH = Graph.path(3)  # u=0, s=1, v=2


def test_one_lc_examples():
    assert one_local_complement(C4, []) == C4
    assert one_local_complement(C4, [1]) == local_complement(C4, 1)
    assert one_local_complement(C4, [1]).has_edge(0, 2)
    with pytest.raises(PreconditionError):
        one_local_complement(PATH, [0, 1])


def test_incidence_examples():
    assert is_2_incident(C4, []).is_incident
    rep = is_2_incident(PATH, [1])
    assert not rep.is_incident and rep.violating_pair == (0, 2)
    assert is_2_incident(C4, C4_S).is_incident
    with pytest.raises(PreconditionError):
        is_2_incident(PATH, [0, 1])


def test_incidence_triple_violation():
    # three outside vertices sharing one top vertex plus pairwise-fixing tops
    g = Graph.from_edges(7, [(0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (0, 5), (2, 5), (1, 6), (2, 6)])
    rep = is_2_incident(g, [3, 4, 5, 6])
    assert not rep.is_incident
    assert rep.violating_pair is None and rep.violating_triple == (0, 1, 2)


def test_two_lc_examples():
    assert two_local_complement(C4, C4_S) == Graph.from_edges(4, C4.edges() + [(0, 2)])
    with pytest.raises(NotTwoIncidentError) as err:
        two_local_complement(PATH, [1])
    assert err.value.report.violating_pair == (0, 2)


def test_witness_examples():
    w = find_one_lc_witness(C4, C4_S)
    assert w is not None and w.to_list() in ([1], [3])
    assert is_one_lc_witness(C4, C4_S, [1]) and is_one_lc_witness(C4, C4_S, [3])
    assert not is_one_lc_witness(C4, C4_S, [1, 3])


def test_profile_rejects_non_bipartite():
    with pytest.raises(PreconditionError):
        property_profile(Graph.complete(3), [0], 3)


@pytest.mark.parametrize("name,expect", [
    ("fig2", (True, True, True, True, True)),
    ("fig3", (True, True, True, True, False)),
    ("fig4", (True, True, True, True, False)),
])
def test_catalog_profiles(name, expect):
    e = catalog.get(name)
    p = property_profile(e.graph, e.s, e.graph.n)
    assert (p.p1, p.p2, p.p3, p.p4, p.p5) == expect


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60)
def test_one_lc_order_independent(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 9))
    a = random_independent(rng, g)
    members = a.to_list()
    expected = one_local_complement(g, a)
    orders = permutations(members) if len(members) <= 4 else [rng.sample(members, len(members)) for _ in range(5)]
    for order in orders:
        h = g
        for u in order:
            h = local_complement(h, u)
        assert h == expected
    # toggle rule: outside pairs toggle iff the common count in A is odd
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if u in a or v in a:
                assert expected.has_edge(u, v) == g.has_edge(u, v)
            else:
                assert expected.has_edge(u, v) == (g.has_edge(u, v) ^ (common_count(g, u, v, a) % 2 == 1))


@given(two_incident_instances(inner_p=0.3, twins=True))
@settings(max_examples=80)
def test_two_lc_locality_and_rule(inst):
    g, s = inst
    h = two_local_complement(g, s)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            c = common_count(g, u, v, s)
            if u in s or v in s:
                assert h.has_edge(u, v) == g.has_edge(u, v)
            else:
                assert c % 2 == 0
                assert h.has_edge(u, v) == (g.has_edge(u, v) ^ (c % 4 == 2))


@given(two_incident_instances(max_k=6, max_tops=14, twins=True))
@settings(max_examples=80)
def test_witness_soundness(inst):
    g, s = inst
    w = find_one_lc_witness(g, s)
    matrix, rhs, _ = witness_system(g, s)
    if w is None:
        from lulc.f2 import rank
        from lulc.f2 import F2Matrix

        aug = F2Matrix(tuple(r | (rhs >> i & 1) << matrix.ncols for i, r in enumerate(matrix.rows)),
                       matrix.ncols + 1)
        assert rank(aug) == rank(matrix) + 1
    else:
        assert not (w - s)
        assert one_local_complement(g, w) == two_local_complement(g, s)


def test_random_independent_sets_reported_consistently():
    rng = random.Random(7)
    for _ in range(100):
        g = random_graph(rng, rng.randint(2, 9), 0.4)
        s = random_independent(rng, g)
        rep = is_2_incident(g, s)
        outside = s.complement().to_list()
        if rep.violating_pair:
            assert common_count(g, *rep.violating_pair, s) % 2 == 1
        elif rep.violating_triple:
            u, v, w = rep.violating_triple
            assert (g.rows[u] & g.rows[v] & g.rows[w] & s.bits).bit_count() % 2 == 1
        else:
            for i, u in enumerate(outside):
                for v in outside[i + 1:]:
                    assert common_count(g, u, v, s) % 2 == 0


@pytest.mark.parametrize("name", ["fig1", "fig2", "fig3", "fig4"])
def test_catalog_toggle_counts(name):
    e = catalog.get(name)
    s = e.s
    for u in e.bottom:
        for v in e.bottom:
            if u < v:
                c = common_count(e.graph, u, v, s)
                assert c % 2 == 0


def test_generator_is_2_incident():
    rng = random.Random(3)
    made = 0
    while made < 50:
        inst = random_2incident(rng, rng.randint(2, 6), 12, twins=True, inner_p=0.2)
        if inst is None:
            continue
        made += 1
        assert is_2_incident(*inst).is_incident
