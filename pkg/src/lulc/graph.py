"""Labeled simple undirected graphs over bit-vector adjacency rows.

Vertices are the integers ``0..n-1``.  Row ``u`` of the adjacency is a Python
``int`` whose bit ``v`` is set iff ``{u, v}`` is an edge.  Every value in this
module is immutable; all rewrites return new graphs.

Equality is *labeled* equality: two graphs are equal iff they have the same
vertex count and the same adjacency bits.  Isomorphism is only available
through the guarded brute force :func:`bipartite_isomorphic`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from lulc import _kernels
from lulc.errors import PreconditionError, ResourceLimitError

MAX_VERTICES = 512
MAX_ISO_SIDE = 9


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class VertexSet:
    """A subset of ``range(width)`` stored as a bit mask."""

    width: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.width < 0:
            raise PreconditionError("negative width")
        if self.bits < 0 or self.bits >> self.width:
            raise PreconditionError(f"bits outside width {self.width}")

    @classmethod
    def of(cls, width: int, members: Iterable[int]) -> VertexSet:
        bits = 0
        for v in members:
            if not 0 <= v < width:
                raise PreconditionError(f"vertex {v} out of range for width {width}")
            bits |= 1 << v
        return cls(width, bits)

    @classmethod
    def full(cls, width: int) -> VertexSet:
        return cls(width, (1 << width) - 1)

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < self.width and bool(self.bits >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return _bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def _check(self, other: VertexSet) -> None:
        if self.width != other.width:
            raise PreconditionError(f"width mismatch: {self.width} vs {other.width}")

    def __xor__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.width, self.bits ^ other.bits)

    def __or__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.width, self.bits | other.bits)

    def __and__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.width, self.bits & other.bits)

    def __sub__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.width, self.bits & ~other.bits)

    def complement(self) -> VertexSet:
        return VertexSet(self.width, ((1 << self.width) - 1) ^ self.bits)

    def to_list(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"VertexSet({self.width}, {self.to_list()})"


class Graph:
    """Immutable labeled simple undirected graph."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, rows: Iterable[int] | None = None, *, check: bool = True):
        if not 0 <= n <= MAX_VERTICES:
            raise PreconditionError(f"vertex count {n} outside [0, {MAX_VERTICES}]")
        rows = tuple(rows) if rows is not None else (0,) * n
        if check:
            if len(rows) != n:
                raise PreconditionError("row count does not match n")
            for u, r in enumerate(rows):
                if r < 0 or r >> n:
                    raise PreconditionError(f"row {u} has bits outside width {n}")
                if r >> u & 1:
                    raise PreconditionError(f"self-loop at {u}")
                for v in _bits(r):
                    if not rows[v] >> u & 1:
                        raise PreconditionError(f"asymmetric adjacency at {{{u},{v}}}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_hash", hash((n, rows)))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    # construction helpers

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge {{{u},{v}}} out of range for n={n}")
            if rows[u] >> v & 1:
                raise PreconditionError(f"duplicate edge {{{u},{v}}}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, check=False)

    @classmethod
    def from_adjacency(cls, mat) -> Graph:
        a = np.asarray(mat)
        n = a.shape[0]
        rows = [sum(1 << int(v) for v in np.flatnonzero(a[u])) for u in range(n)]
        return cls(n, rows)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, [0] * n, check=False)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << u) for u in range(n)], check=False)

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def star(cls, n: int) -> Graph:
        return cls.from_edges(n, [(0, i) for i in range(1, n)])

    # queries

    def _vertex(self, u: int) -> int:
        if not (isinstance(u, (int, np.integer)) and 0 <= u < self.n):
            raise PreconditionError(f"vertex {u} out of range for n={self.n}")
        return int(u)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[self._vertex(u)] >> self._vertex(v) & 1)

    def degree(self, u: int) -> int:
        return self.rows[self._vertex(u)].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def vertex_set(self, members: Iterable[int] | VertexSet = ()) -> VertexSet:
        """Coerce ``members`` into a :class:`VertexSet` of matching width."""
        if isinstance(members, VertexSet):
            if members.width != self.n:
                raise PreconditionError(
                    f"vertex set width {members.width} does not match n={self.n}"
                )
            return members
        return VertexSet.of(self.n, members)

    def to_adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph({self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class BipartiteSplit:
    """A graph together with an independent side ``s`` covering every edge once."""

    graph: Graph
    s: VertexSet

    def __post_init__(self) -> None:
        s = self.graph.vertex_set(self.s)
        object.__setattr__(self, "s", s)
        if not is_bipartite_split(self.graph, s):
            raise PreconditionError("graph is not bipartite with respect to s")

    @property
    def t(self) -> VertexSet:
        """The non-distinguished side ``V \\ S``."""
        return self.s.complement()


def neighbors(g: Graph, u: int) -> VertexSet:
    return VertexSet(g.n, g.rows[g._vertex(u)])


def are_twins(g: Graph, u: int, v: int) -> bool:
    """True iff ``N(u) \\ {v} == N(v) \\ {u}``."""
    u, v = g._vertex(u), g._vertex(v)
    if u == v:
        raise PreconditionError("twin test needs two distinct vertices")
    mask = ~((1 << u) | (1 << v))
    return g.rows[u] & mask == g.rows[v] & mask


def is_independent(g: Graph, s: VertexSet | Iterable[int]) -> bool:
    s = g.vertex_set(s)
    return all(g.rows[u] & s.bits == 0 for u in s)


def is_bipartite_split(g: Graph, s: VertexSet | Iterable[int]) -> bool:
    """Both ``s`` and its complement are independent."""
    s = g.vertex_set(s)
    return is_independent(g, s) and is_independent(g, s.complement())


def two_coloring(g: Graph) -> VertexSet | None:
    """A side ``s`` with ``(g, s)`` bipartite, or None for non-bipartite ``g``.

    Each component's lowest vertex goes to the complement of ``s``.
    """
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for v in _bits(g.rows[u]):
                if side[v] < 0:
                    side[v] = 1 - side[u]
                    stack.append(v)
                elif side[v] == side[u]:
                    return None
    return VertexSet.of(g.n, (u for u in range(g.n) if side[u] == 1))


def local_complement(g: Graph, u: int) -> Graph:
    """``G * u``: complement the subgraph induced by ``N(u)``."""
    nb = g.rows[g._vertex(u)]
    rows = list(g.rows)
    for v in _bits(nb):
        rows[v] ^= nb ^ (1 << v)
    return Graph(g.n, rows, check=False)


def pivot(g: Graph, u: int, v: int) -> Graph:
    """``G ^ uv = G * u * v * u`` on the edge ``{u, v}``."""
    if not g.has_edge(u, v):
        raise PreconditionError(f"pivot needs an edge, {{{u},{v}}} is not one")
    return local_complement(local_complement(local_complement(g, u), v), u)


def remove_vertex(g: Graph, u: int) -> Graph:
    """Delete ``u``; vertices above ``u`` shift down by one index."""
    u = g._vertex(u)
    low = (1 << u) - 1
    rows = []
    for w, r in enumerate(g.rows):
        if w != u:
            rows.append((r & low) | (r >> (u + 1) << u))
    return Graph(g.n - 1, rows, check=False)


def remove_vertices(g: Graph, vertices: Iterable[int]) -> Graph:
    for u in sorted(set(vertices), reverse=True):
        g = remove_vertex(g, u)
    return g


def compact_set(s: VertexSet, removed: Iterable[int]) -> VertexSet:
    """Relabel ``s`` the way :func:`remove_vertex` relabels vertices."""
    bits, width = s.bits, s.width
    for u in sorted(set(removed), reverse=True):
        low = (1 << u) - 1
        bits = (bits & low) | (bits >> (u + 1) << u)
        width -= 1
    return VertexSet(width, bits)


def add_vertex_adjacent_to(g: Graph, s: VertexSet | Iterable[int]) -> Graph:
    """Append vertex ``n`` adjacent exactly to ``s``."""
    s = g.vertex_set(s)
    new = 1 << g.n
    rows = [r | new if s.bits >> u & 1 else r for u, r in enumerate(g.rows)]
    rows.append(s.bits)
    return Graph(g.n + 1, rows, check=False)


def induced_toggle(g: Graph, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Toggle every listed vertex pair (used by the set-level rewrites)."""
    rows = list(g.rows)
    for u, v in pairs:
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
    return Graph(g.n, rows, check=False)


def drop_edges_within(g: Graph, t: VertexSet) -> Graph:
    t = g.vertex_set(t)
    return Graph(g.n, [r & ~t.bits if u in t else r for u, r in enumerate(g.rows)], check=False)


def twin_pairs(g: Graph, among: VertexSet | None = None) -> Iterator[tuple[int, int]]:
    """Twin pairs in lexicographic order, optionally restricted to ``among``."""
    verts = list(among) if among is not None else range(g.n)
    for u, v in combinations(verts, 2):
        if are_twins(g, u, v):
            yield u, v


def bipartite_isomorphic(a: BipartiteSplit, b: BipartiteSplit) -> bool:
    """Brute-force isomorphism of splits, permuting the non-S sides only.

    True iff some bijection of the ``V \\ S`` sides maps the multiset of
    S-side neighborhoods of ``a`` onto that of ``b``.  Both non-S sides must
    have at most 9 vertices.
    """
    ta, tb = a.t.to_list(), b.t.to_list()
    for side in (ta, tb):
        if len(side) > MAX_ISO_SIDE:
            raise ResourceLimitError(
                f"non-S side of {len(side)} vertices exceeds brute-force guard {MAX_ISO_SIDE}"
            )
    if a.graph.n != b.graph.n or len(ta) != len(tb):
        return False
    k = len(ta)

    def codes(split: BipartiteSplit, side: list[int]) -> np.ndarray:
        pos = {v: i for i, v in enumerate(side)}
        out = []
        for x in split.s:
            c = 0
            for v in _bits(split.graph.rows[x]):
                c |= 1 << pos[v]
            out.append(c)
        return np.array(sorted(out), dtype=np.int64)

    ca, cb = codes(a, ta), codes(b, tb)
    deg_a = sorted(int(((ca >> i) & 1).sum()) for i in range(k))
    deg_b = sorted(int(((cb >> i) & 1).sum()) for i in range(k))
    if deg_a != deg_b:
        return False
    return _kernels.permutation_match(ca, cb, k)
