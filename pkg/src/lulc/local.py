"""Set-level local complementations and the reduction properties.

``one_local_complement`` applies a local complementation at every vertex
of an independent set.  ``two_local_complement`` toggles each pair whose
common-neighbor count inside a 2-incident set is 2 mod 4.
``find_one_lc_witness`` decides whether the second can be replaced by the
first over some subset of the same set.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from lulc import _kernels
from lulc.errors import PreconditionError
from lulc.f2 import F2Matrix, solve
from lulc.graph import (
    Graph,
    VertexSet,
    is_bipartite_split,
    is_independent,
    local_complement,
    twin_pairs,
)


class NotTwoIncidentError(PreconditionError):
    """Raised when a 2-local complementation is requested on a non-2-incident set."""

    def __init__(self, report: IncidenceReport):
        self.report = report
        super().__init__(f"set is not 2-incident: {report.describe()}")


@dataclass(frozen=True)
class IncidenceReport:
    is_incident: bool
    violating_pair: tuple[int, int] | None = None
    violating_triple: tuple[int, int, int] | None = None

    def describe(self) -> str:
        if self.violating_pair is not None:
            return f"pair {self.violating_pair} has an odd number of common neighbors in S"
        if self.violating_triple is not None:
            return f"triple {self.violating_triple} has an odd number of common neighbors in S"
        return "2-incident"


@dataclass(frozen=True)
class PropertyProfile:
    p1: bool
    p2: bool
    p3: bool
    p4: bool
    p5: bool
    bound: int

    def all(self) -> bool:
        return self.p1 and self.p2 and self.p3 and self.p4 and self.p5

    def as_dict(self) -> dict:
        return {"p1": self.p1, "p2": self.p2, "p3": self.p3, "p4": self.p4, "p5": self.p5,
                "bound": self.bound}


def _independent_set(g: Graph, s: VertexSet | Iterable[int], what: str = "set") -> VertexSet:
    s = g.vertex_set(s)
    if not is_independent(g, s):
        raise PreconditionError(f"{what} is not independent")
    return s


def common_count(g: Graph, u: int, v: int, s: VertexSet) -> int:
    return (g.rows[u] & g.rows[v] & s.bits).bit_count()


def one_local_complement(g: Graph, a: VertexSet | Iterable[int]) -> Graph:
    """``G *1 A``: local complementation at every member of independent ``a``."""
    a = _independent_set(g, a)
    for u in a:
        g = local_complement(g, u)
    return g


def is_2_incident(g: Graph, s: VertexSet | Iterable[int]) -> IncidenceReport:
    """Check every pair, then every triple, of ``V \\ S`` for even counts in ``S``.

    The report carries the first violation: pairs are scanned before triples,
    each in lexicographic order.
    """
    s = _independent_set(g, s)
    outside = s.complement().to_list()
    members = s.to_list()
    dense = np.zeros((len(outside), len(members)), dtype=np.uint8)
    for i, u in enumerate(outside):
        for j, x in enumerate(members):
            dense[i, j] = g.rows[u] >> x & 1
    kind, i, j, k = _kernels.incidence_scan(dense)
    if kind == 0:
        return IncidenceReport(True)
    if kind == 2:
        return IncidenceReport(False, violating_pair=(outside[i], outside[j]))
    return IncidenceReport(False, violating_triple=(outside[i], outside[j], outside[k]))


def _toggled_pairs(g: Graph, s: VertexSet) -> list[tuple[int, int]]:
    outside = s.complement().to_list()
    return [
        (u, v)
        for u, v in combinations(outside, 2)
        if common_count(g, u, v, s) % 4 == 2
    ]


def two_local_complement(g: Graph, s: VertexSet | Iterable[int]) -> Graph:
    """``G *2 S``: toggle ``{u, v}`` iff ``|N(u) & N(v) & S| = 2 mod 4``.

    Only pairs outside ``S`` can toggle: a vertex of an independent ``S`` has
    no neighbor in ``S``.
    """
    s = _independent_set(g, s)
    report = is_2_incident(g, s)
    if not report.is_incident:
        raise NotTwoIncidentError(report)
    rows = list(g.rows)
    for u, v in _toggled_pairs(g, s):
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
    return Graph(g.n, rows, check=False)


def witness_system(g: Graph, s: VertexSet) -> tuple[F2Matrix, int, list[tuple[int, int]]]:
    """F2 system whose solutions are the subsets ``A`` of ``S`` with ``G *1 A = G *2 S``.

    One unknown per member of ``S`` (ascending), one equation per unordered
    pair of ``V \\ S``.  Returns ``(matrix, rhs, pairs)``.
    """
    members = s.to_list()
    outside = s.complement().to_list()
    rows = []
    rhs = 0
    pairs = list(combinations(outside, 2))
    for i, (u, v) in enumerate(pairs):
        common = g.rows[u] & g.rows[v] & s.bits
        rows.append(sum(1 << j for j, x in enumerate(members) if common >> x & 1))
        if common.bit_count() % 4 == 2:
            rhs |= 1 << i
    return F2Matrix(tuple(rows), len(members)), rhs, pairs


def find_one_lc_witness(g: Graph, s: VertexSet | Iterable[int]) -> VertexSet | None:
    """Some ``A`` within ``S`` with ``G *1 A == G *2 S``, or None if none exists.

    Absence is certified by inconsistency of :func:`witness_system`.  A
    returned witness has been re-checked by rewriting the graph both ways.
    """
    s = _independent_set(g, s)
    target = two_local_complement(g, s)
    matrix, rhs, _ = witness_system(g, s)
    space = solve(matrix, rhs)
    if not space.consistent:
        return None
    members = s.to_list()
    a = VertexSet.of(g.n, (members[j] for j in range(len(members)) if space.particular >> j & 1))
    if one_local_complement(g, a) != target:
        raise AssertionError("witness system solution does not reproduce G *2 S")
    return a


def is_one_lc_witness(g: Graph, s: VertexSet | Iterable[int], a: VertexSet | Iterable[int]) -> bool:
    s = g.vertex_set(s)
    a = g.vertex_set(a)
    if a - s:
        return False
    return one_local_complement(g, a) == two_local_complement(g, s)


def property_profile(g: Graph, s: VertexSet | Iterable[int], bound: int) -> PropertyProfile:
    """The five reduction properties of a bipartite split.

    ``p5`` is only defined for 2-incident sets; it is reported False when
    ``p4`` fails.
    """
    s = g.vertex_set(s)
    if not is_bipartite_split(g, s):
        raise PreconditionError("property profile needs a split bipartite with respect to S")
    p1 = g.n <= bound
    p2 = all(d % 2 == 1 and d >= 3 for d in g.degrees())
    p3 = next(twin_pairs(g), None) is None
    p4 = is_2_incident(g, s).is_incident
    p5 = p4 and find_one_lc_witness(g, s) is None
    return PropertyProfile(p1, p2, p3, p4, p5, bound)
