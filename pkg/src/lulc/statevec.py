"""Dense state-vector oracle for graph states and single-qubit rotations.

Basis index bit ``v`` is qubit ``v`` (little-endian).  States are immutable
values; every operation returns a new :class:`StateVector`.

Qubit limit: 20 by default.  It can be raised up to 26 with an explicit
``max_qubits`` argument or the ``LULC_MAX_QUBITS`` environment variable (the
argument wins).  Anything above 26 is refused.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping

import numpy as np

from lulc import _kernels
from lulc.errors import PreconditionError, ResourceLimitError
from lulc.graph import (
    BipartiteSplit,
    Graph,
    VertexSet,
    is_independent,
    local_complement,
    pivot,
)
from lulc.local import two_local_complement

DEFAULT_MAX_QUBITS = 20
HARD_MAX_QUBITS = 26
STATE_TOL = 1e-9
FIXPOINT_TOL = 1e-12
NORM_TOL = 1e-9
MAX_SCAN_OUTSIDE = 6

TWO_PI = 2.0 * math.pi
_H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)
_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)


def qubit_limit(max_qubits: int | None = None) -> int:
    if max_qubits is None:
        env = os.environ.get("LULC_MAX_QUBITS")
        max_qubits = int(env) if env else DEFAULT_MAX_QUBITS
    if max_qubits > HARD_MAX_QUBITS:
        raise ResourceLimitError(f"qubit limit {max_qubits} exceeds hard cap {HARD_MAX_QUBITS}")
    return max_qubits


def _check_size(n: int, max_qubits: int | None) -> None:
    limit = qubit_limit(max_qubits)
    if n > limit:
        raise ResourceLimitError(f"{n} qubits exceeds the state-vector limit {limit}")


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        if self.amps.shape != (1 << self.n,):
            raise PreconditionError("amplitude array length must be 2**n")
        self.amps.setflags(write=False)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def _checked(self) -> StateVector:
        if abs(self.norm() - 1.0) > NORM_TOL:
            raise AssertionError(f"norm drifted to {self.norm()!r}")
        return self

    @classmethod
    def basis(cls, n: int, index: int) -> StateVector:
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n, amps)

    def with_phase(self, phi: float) -> StateVector:
        return StateVector(self.n, self.amps * np.exp(1j * phi))


@dataclass(frozen=True)
class AngleAssignment:
    """Z-rotation angle per vertex, reduced to ``[0, 2 pi)``."""

    angles: tuple[tuple[int, float], ...]

    @classmethod
    def from_mapping(cls, angles: Mapping[int, float]) -> AngleAssignment:
        return cls(tuple(sorted((int(v), reduce_angle(a)) for v, a in angles.items())))

    def as_dict(self) -> dict[int, float]:
        return dict(self.angles)

    def multiples(self, step: float) -> dict[int, int]:
        return {v: int(round(a / step)) % int(round(TWO_PI / step)) for v, a in self.angles}


def reduce_angle(a: float) -> float:
    r = math.fmod(a, TWO_PI)
    if r < 0:
        r += TWO_PI
    if TWO_PI - r < 1e-12:
        r = 0.0
    return r


def z_matrix(alpha: float) -> np.ndarray:
    return np.array([[1.0, 0.0], [0.0, np.exp(1j * alpha)]], dtype=np.complex128)


def x_matrix(alpha: float) -> np.ndarray:
    """``X(alpha) = H Z(alpha) H``."""
    return _H @ z_matrix(alpha) @ _H


def graph_state(g: Graph, max_qubits: int | None = None) -> StateVector:
    """``prod CZ |+>^n``; amplitude of ``x`` is ``(-1)^{edges in supp x} / 2^{n/2}``."""
    _check_size(g.n, max_qubits)
    lower = np.array([r & ((1 << v) - 1) for v, r in enumerate(g.rows)], dtype=np.int64)
    signs = _kernels.graph_state_signs(g.n, lower)
    return StateVector(g.n, signs.astype(np.complex128) * (2.0 ** (-g.n / 2)))


def _check_vertex(state: StateVector, v: int) -> None:
    if not 0 <= v < state.n:
        raise PreconditionError(f"qubit {v} out of range for n={state.n}")


def apply_gate(state: StateVector, v: int, m: np.ndarray) -> StateVector:
    _check_vertex(state, v)
    amps = state.amps.copy()
    _kernels.apply_1q(amps, v, m)
    return StateVector(state.n, amps)._checked()


def apply_z(state: StateVector, v: int, alpha: float) -> StateVector:
    return apply_gate(state, v, z_matrix(alpha))


def apply_x(state: StateVector, v: int, alpha: float) -> StateVector:
    return apply_gate(state, v, x_matrix(alpha))


def apply_h(state: StateVector, v: int) -> StateVector:
    return apply_gate(state, v, _H)


def apply_rotations(
    state: StateVector,
    x: Mapping[int, float] | None = None,
    z: Mapping[int, float] | None = None,
    h: Iterable[int] = (),
) -> StateVector:
    """Apply Z rotations, then X rotations, then Hadamards, with one copy.

    The gates act on distinct qubits in every use here, so the order only
    matters when a qubit appears twice.
    """
    amps = state.amps.copy()
    for v, a in (z or {}).items():
        _check_vertex(state, v)
        view = amps.reshape(-1, 2, 1 << v)
        view[:, 1, :] *= np.exp(1j * a)
    for v, a in (x or {}).items():
        _check_vertex(state, v)
        _kernels.apply_1q(amps, v, x_matrix(a))
    for v in h:
        _check_vertex(state, v)
        _kernels.apply_1q(amps, v, _H)
    return StateVector(state.n, amps)._checked()


def apply_stabilizer(state: StateVector, g: Graph, u: int) -> StateVector:
    """``X_u Z_{N(u)}`` applied to ``state``."""
    amps = state.amps.copy()
    _kernels.apply_1q(amps, u, _X)
    nb = g.rows[u]
    for v in range(g.n):
        if nb >> v & 1:
            _kernels.apply_1q(amps, v, _Z)
    return StateVector(state.n, amps)


def overlap(s1: StateVector, s2: StateVector) -> float:
    """``|<s1|s2>|``."""
    if s1.n != s2.n:
        raise PreconditionError("states have different qubit counts")
    return float(abs(np.vdot(s1.amps, s2.amps)))


def equal_up_to_global_phase(s1: StateVector, s2: StateVector, tol: float = STATE_TOL) -> bool:
    return overlap(s1, s2) >= 1.0 - tol


def fidelity(s1: StateVector, s2: StateVector) -> float:
    """``|<s1|s2>|^2``."""
    return overlap(s1, s2) ** 2


def lc_formula_states(g: Graph, u: int, max_qubits: int | None = None) -> tuple[StateVector, StateVector]:
    """``(X(pi/2)_u Z(-pi/2)_{N(u)} |G>, |G * u>)``."""
    psi = graph_state(g, max_qubits)
    nb = [v for v in range(g.n) if g.rows[u] >> v & 1]
    out = apply_rotations(psi, x={u: math.pi / 2}, z={v: -math.pi / 2 for v in nb})
    return out, graph_state(local_complement(g, u), max_qubits)


def pivot_formula_states(
    split: BipartiteSplit, u: int, v: int, max_qubits: int | None = None
) -> tuple[StateVector, StateVector]:
    """``(H_u H_v |G>, |G ^ uv>)`` on a bipartite graph."""
    g = split.graph
    target = pivot(g, u, v)
    out = apply_rotations(graph_state(g, max_qubits), h=(u, v))
    return out, graph_state(target, max_qubits)


def two_lc_angles(g: Graph, s: VertexSet) -> dict[int, float]:
    """``-pi/4 |N(v) & S|`` for every ``v`` outside ``S``."""
    return {v: -math.pi / 4 * (g.rows[v] & s.bits).bit_count() for v in s.complement()}


def two_lc_formula_states(
    g: Graph, s: VertexSet | Iterable[int], max_qubits: int | None = None
) -> tuple[StateVector, StateVector]:
    """``(X(pi/4)^S Z(-pi/4 |N(v) & S|)^{V\\S} |G>, |G *2 S>)``."""
    s = g.vertex_set(s)
    target = two_local_complement(g, s)
    out = apply_rotations(graph_state(g, max_qubits), x={u: math.pi / 4 for u in s},
                          z=two_lc_angles(g, s))
    return out, graph_state(target, max_qubits)


def verify_lc_formula(g: Graph, u: int, tol: float = STATE_TOL, max_qubits: int | None = None) -> bool:
    return equal_up_to_global_phase(*lc_formula_states(g, u, max_qubits), tol)


def verify_pivot_formula(
    split: BipartiteSplit, u: int, v: int, tol: float = STATE_TOL, max_qubits: int | None = None
) -> bool:
    return equal_up_to_global_phase(*pivot_formula_states(split, u, v, max_qubits), tol)


def verify_2lc_formula(
    g: Graph, s: VertexSet | Iterable[int], tol: float = STATE_TOL, max_qubits: int | None = None
) -> bool:
    return equal_up_to_global_phase(*two_lc_formula_states(g, s, max_qubits), tol)


def _normalized(state: StateVector) -> np.ndarray | None:
    n = state.n
    scale = 2.0 ** (n / 2)
    mod2 = np.abs(state.amps) ** 2 * (1 << n)
    if np.max(np.abs(mod2 - 1.0)) > 1e-6:
        return None
    a0 = state.amps[0]
    return state.amps * (np.conj(a0) / abs(a0)) * scale


def _graph_from_normalized(n: int, z: np.ndarray) -> Graph | None:
    for v in range(n):
        if abs(z[1 << v] - 1.0) > 0.5:
            return None
    rows = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            w = z[(1 << u) | (1 << v)]
            if abs(w + 1.0) < 0.5:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            elif abs(w - 1.0) >= 0.5:
                return None
    return Graph(n, rows, check=False)


def recover_graph(state: StateVector, tol: float = STATE_TOL) -> Graph | None:
    """The graph ``g`` with ``state = |g>`` up to global phase, if any.

    Checks the uniform modulus ``2^{-n/2}``, fixes the phase on basis state
    0, reads single-support amplitudes (must be +1) and double-support signs
    (the edges), then confirms the whole vector.
    """
    z = _normalized(state)
    if z is None:
        return None
    g = _graph_from_normalized(state.n, z)
    if g is None:
        return None
    if not equal_up_to_global_phase(state, graph_state(g, max_qubits=HARD_MAX_QUBITS), tol):
        return None
    return g


def scan_angle_assignments(
    g: Graph,
    s: VertexSet | Iterable[int],
    step: float = math.pi / 4,
    x_angle: float = math.pi / 4,
    tol: float = STATE_TOL,
    max_qubits: int | None = None,
) -> list[tuple[AngleAssignment, Graph]]:
    """Every Z-angle grid assignment on ``V \\ S`` giving a graph state.

    Applies ``X(x_angle)`` on ``S`` and ``Z(theta_v)`` on each outside vertex
    for all ``theta`` on the grid ``k * step``.  The per-assignment test is
    :func:`recover_graph`; its single-support check is evaluated for the
    whole grid at once and the full test runs on the survivors, which gives
    the same result as testing every assignment in turn.
    """
    s = g.vertex_set(s)
    if not is_independent(g, s):
        raise PreconditionError("angle scan needs an independent set")
    outside = s.complement().to_list()
    if len(outside) > MAX_SCAN_OUTSIDE:
        raise ResourceLimitError(
            f"{len(outside)} outside vertices exceeds the scan guard {MAX_SCAN_OUTSIDE}"
        )
    levels = TWO_PI / step
    if abs(levels - round(levels)) > 1e-9 or round(levels) < 1:
        raise PreconditionError("step must divide 2 pi")
    levels = int(round(levels))

    base = apply_rotations(graph_state(g, max_qubits), x={u: x_angle for u in s})
    z = _normalized(base)
    if z is None:
        return []  # Z rotations never change moduli
    grid = np.array(list(product(range(levels), repeat=len(outside))), dtype=np.int64)
    grid = grid.reshape(levels ** len(outside), len(outside))
    ok = np.ones(len(grid), dtype=bool)
    for i, v in enumerate(outside):
        ok &= np.abs(z[1 << v] * np.exp(1j * step * grid[:, i]) - 1.0) <= 0.5
    for u in s:
        if abs(z[1 << u] - 1.0) > 0.5:
            ok[:] = False
    results = []
    for row in grid[ok]:
        theta = {v: step * int(k) for v, k in zip(outside, row)}
        out = apply_rotations(base, z=theta)
        found = recover_graph(out, tol)
        if found is not None:
            results.append((AngleAssignment.from_mapping(theta), found))
    return results
