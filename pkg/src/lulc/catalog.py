"""The four reference graphs as labeled bipartite splits.

Labeling convention: bottom vertices first (bottom ``i`` has index ``i-1``),
then top vertices in the listed subset order.  Each top vertex is named after
its neighborhood, a tuple of bottom names.  ``S`` is always the top side.

The 24-vertex graph has 13 degree-3 top vertices, giving
7 + 1 + 3 + 13 = 24 vertices in total.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from lulc.errors import PreconditionError
from lulc.graph import BipartiteSplit, Graph, VertexSet


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    split: BipartiteSplit
    companion: Graph | None
    names: tuple = field(repr=False)
    notes: str = ""

    @property
    def graph(self) -> Graph:
        return self.split.graph

    @property
    def s(self) -> VertexSet:
        return self.split.s

    @property
    def bottom(self) -> list[int]:
        return self.split.t.to_list()

    @property
    def top(self) -> list[int]:
        return self.split.s.to_list()

    def index_of(self, name) -> int:
        """Index of a bottom vertex (int) or top vertex (iterable of bottom names)."""
        key = name if isinstance(name, int) else tuple(sorted(name))
        try:
            return self.names.index(key)
        except ValueError:
            raise PreconditionError(f"no vertex named {name!r} in {self.name}") from None


def _build(name: str, k: int, tops: list[tuple[int, ...]], companion_edges, notes: str) -> CatalogEntry:
    n = k + len(tops)
    edges = [(b - 1, k + i) for i, top in enumerate(tops) for b in top]
    g = Graph.from_edges(n, edges)
    s = VertexSet.of(n, range(k, n))
    companion = None
    if companion_edges is not None:
        companion = Graph.from_edges(n, edges + [(a - 1, b - 1) for a, b in companion_edges])
    names = tuple(range(1, k + 1)) + tuple(tops)
    return CatalogEntry(name, BipartiteSplit(g, s), companion, names, notes)


def fig1_pair() -> CatalogEntry:
    """27 vertices: 6 bottoms, tops = all 5-subsets then all 4-subsets."""
    bottoms = range(1, 7)
    tops = list(combinations(bottoms, 5)) + list(combinations(bottoms, 4))
    return _build("fig1", 6, tops, list(combinations(bottoms, 2)),
                  "27-qubit pair; companion adds K6 on the bottom")


def fig2_pair() -> CatalogEntry:
    """28 vertices: 7 bottoms, tops = all 5-subsets."""
    bottoms = range(1, 8)
    tops = list(combinations(bottoms, 5))
    return _build("fig2", 7, tops, list(combinations(bottoms, 2)),
                  "28-qubit pair; companion adds K7 on the bottom")


def fig3_graph() -> CatalogEntry:
    """16 vertices: 5 bottoms, tops = the full set then all 3-subsets."""
    bottoms = range(1, 6)
    tops = [tuple(bottoms)] + list(combinations(bottoms, 3))
    return _build("fig3", 5, tops, None, "fixed by the 2-local complementation on its top set")


FIG4_TRIPLES = [
    (1, 5, 6), (2, 5, 6), (3, 5, 6), (4, 5, 6),
    (1, 5, 7), (2, 5, 7), (3, 5, 7), (4, 5, 7),
    (1, 6, 7), (2, 6, 7), (3, 6, 7), (4, 6, 7),
    (5, 6, 7),
]


def fig4_graph() -> CatalogEntry:
    """24 vertices: 7 bottoms, then 1 + 3 + 13 tops."""
    tops = [tuple(range(1, 8)), (1, 2, 3, 4, 5), (1, 2, 3, 4, 6), (1, 2, 3, 4, 7)] + FIG4_TRIPLES
    return _build("fig4", 7, tops, [(5, 6), (5, 7), (6, 7)],
                  "2-LC equals a single 1-LC; 13 degree-3 tops")


CATALOG = {
    "fig1": fig1_pair,
    "fig2": fig2_pair,
    "fig3": fig3_graph,
    "fig4": fig4_graph,
}


def get(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]()
    except KeyError:
        raise PreconditionError(f"unknown catalog entry {name!r}; choose from {sorted(CATALOG)}") from None
