import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_graph, random_independent, random_split
from lulc import catalog
from lulc.errors import PreconditionError, ResourceLimitError
from lulc.graph import BipartiteSplit, Graph, VertexSet
from lulc.local import two_local_complement
from lulc.statevec import (
    DEFAULT_MAX_QUBITS,
    HARD_MAX_QUBITS,
    AngleAssignment,
    StateVector,
    apply_h,
    apply_rotations,
    apply_stabilizer,
    apply_x,
    apply_z,
    equal_up_to_global_phase,
    graph_state,
    qubit_limit,
    recover_graph,
    scan_angle_assignments,
    two_lc_angles,
    verify_2lc_formula,
    verify_lc_formula,
    verify_pivot_formula,
    x_matrix,
    z_matrix,
)

C4 = Graph.cycle(4)
C4_S = VertexSet.of(4, [1, 3])


def test_graph_state_examples():
    assert np.allclose(graph_state(Graph.empty(1)).amps, [2 ** -0.5] * 2)
    assert np.allclose(graph_state(Graph.complete(2)).amps, np.array([1, 1, 1, -1]) / 2)


def test_little_endian_layout():
    # edge {0, 1} in a 3-vertex graph: sign flips on basis states with bits 0 and 1 set
    amps = graph_state(Graph.from_edges(3, [(0, 1)])).amps * 2 ** 1.5
    assert np.allclose(amps.real, [1, 1, 1, -1, 1, 1, 1, -1])


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30)
def test_stabilizer_fixpoints(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 8))
    psi = graph_state(g)
    for u in range(g.n):
        out = apply_stabilizer(psi, g, u)
        assert np.max(np.abs(out.amps - psi.amps)) < 1e-12


def test_gate_identities():
    psi = graph_state(Graph.path(3))
    assert np.allclose(apply_z(psi, 1, 0.0).amps, psi.amps)
    assert np.max(np.abs(apply_h(apply_h(psi, 2), 2).amps - psi.amps)) < 1e-12
    out = psi
    for _ in range(4):
        out = apply_z(out, 0, math.pi / 2)
    assert equal_up_to_global_phase(out, psi)
    h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    assert np.allclose(x_matrix(0.7), h @ z_matrix(0.7) @ h)
    assert np.allclose(apply_x(psi, 0, 0.3).amps, apply_rotations(psi, x={0: 0.3}).amps)


def test_norm_preserved_over_many_gates():
    rng = random.Random(11)
    psi = graph_state(random_graph(rng, 6))
    for _ in range(1000):
        v = rng.randrange(6)
        kind = rng.randrange(3)
        if kind == 0:
            psi = apply_z(psi, v, rng.uniform(0, 2 * math.pi))
        elif kind == 1:
            psi = apply_x(psi, v, rng.uniform(0, 2 * math.pi))
        else:
            psi = apply_h(psi, v)
    assert abs(psi.norm() - 1.0) < 1e-9


def test_global_phase_comparison():
    psi = graph_state(Graph.cycle(5))
    assert equal_up_to_global_phase(psi, psi)
    assert equal_up_to_global_phase(psi, psi.with_phase(math.pi / 7))
    assert not equal_up_to_global_phase(StateVector.basis(1, 0), StateVector.basis(1, 1))


def test_qubit_limits(monkeypatch):
    monkeypatch.delenv("LULC_MAX_QUBITS", raising=False)
    assert qubit_limit() == DEFAULT_MAX_QUBITS
    monkeypatch.setenv("LULC_MAX_QUBITS", "12")
    assert qubit_limit() == 12
    assert qubit_limit(5) == 5
    with pytest.raises(ResourceLimitError):
        graph_state(Graph.empty(13))
    with pytest.raises(ResourceLimitError):
        qubit_limit(HARD_MAX_QUBITS + 1)


def test_formula_examples():
    assert verify_lc_formula(Graph.complete(3), 0)
    for n in range(2, 7):
        assert verify_lc_formula(Graph.star(n), 0)
    k2 = Graph.complete(2)
    assert verify_pivot_formula(BipartiteSplit(k2, VertexSet.of(2, [1])), 0, 1)
    for u, v in C4.edges():
        assert verify_pivot_formula(BipartiteSplit(C4, C4_S), u, v)
    assert verify_2lc_formula(C4, C4_S)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25)
def test_random_pivot_formula(seed):
    rng = random.Random(seed)
    g, s = random_split(rng, rng.randint(1, 5), rng.randint(1, 5))
    if g.edges():
        u, v = rng.choice(g.edges())
        assert verify_pivot_formula(BipartiteSplit(g, s), u, v)


def test_recover_graph_examples():
    k3 = Graph.complete(3)
    assert recover_graph(graph_state(k3)) == k3
    w = np.zeros(8, dtype=complex)
    w[[1, 2, 4]] = 3 ** -0.5
    assert recover_graph(StateVector(3, w)) is None
    g = Graph.cycle(5)
    assert recover_graph(graph_state(g).with_phase(1.3)) == g


def test_recover_round_trip():
    rng = random.Random(5)
    for _ in range(40):
        g = random_graph(rng, rng.randint(0, 10))
        assert recover_graph(graph_state(g)) == g


def test_scan_examples():
    found = scan_angle_assignments(C4, C4_S)
    assert len(found) == 1
    assignment, h = found[0]
    expected = AngleAssignment.from_mapping(two_lc_angles(C4, C4_S))
    assert assignment == expected
    assert assignment.as_dict() == {0: 1.5 * math.pi, 2: 1.5 * math.pi}
    assert h == two_local_complement(C4, C4_S)
    assert scan_angle_assignments(Graph.path(3), [1]) == []
    zero = scan_angle_assignments(Graph.path(3), [])
    assert [a.as_dict() for a, _ in zero] == [{0: 0.0, 1: 0.0, 2: 0.0}]


def test_scan_guards():
    with pytest.raises(ResourceLimitError):
        scan_angle_assignments(Graph.empty(8), [0])
    with pytest.raises(PreconditionError):
        scan_angle_assignments(Graph.empty(3), [0], step=1.0)
    with pytest.raises(PreconditionError):
        scan_angle_assignments(Graph.complete(3), [0, 1])


def test_fig3_formula_is_fixpoint():
    e = catalog.fig3_graph()
    assert verify_2lc_formula(e.graph, e.s)
    assert two_local_complement(e.graph, e.s) == e.graph


def test_scan_with_no_outside_vertices():
    # every vertex rotated: the grid has a single empty assignment
    g = Graph.empty(3)
    found = scan_angle_assignments(g, VertexSet.full(3), step=math.pi / 4, x_angle=math.pi / 2)
    assert len(found) == 1 and found[0][1] == g
