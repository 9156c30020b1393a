"""Random instance generators shared by the test modules."""

from __future__ import annotations

import random
from itertools import combinations

from lulc.f2 import F2Matrix, solve
from lulc.graph import Graph, VertexSet


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def relabel(g: Graph, perm: list[int]) -> Graph:
    """Vertex ``u`` becomes ``perm[u]``."""
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def random_split(rng: random.Random, k: int, m: int, p: float = 0.5) -> tuple[Graph, VertexSet]:
    """Bipartite graph with ``k`` outside vertices ``0..k-1`` and ``S = k..k+m-1``."""
    n = k + m
    edges = [(b, a) for b in range(k) for a in range(k, n) if rng.random() < p]
    return Graph.from_edges(n, edges), VertexSet.of(n, range(k, n))


def random_independent(rng: random.Random, g: Graph) -> VertexSet:
    order = list(range(g.n))
    rng.shuffle(order)
    chosen = 0
    for u in order:
        if rng.random() < 0.5 and not g.rows[u] & chosen:
            chosen |= 1 << u
    return VertexSet(g.n, chosen)


def _subsets(k: int, sizes) -> list[int]:
    return [sum(1 << i for i in c) for r in sizes for c in combinations(range(k), r)]


def random_2incident(
    rng: random.Random,
    k: int,
    max_tops: int = 12,
    sizes=None,
    parity: dict[int, int] | None = None,
    twins: bool = False,
    inner_p: float = 0.0,
    shuffle: bool = True,
) -> tuple[Graph, VertexSet] | None:
    """Bipartite-style instance whose top side ``S`` is 2-incident by construction.

    Candidate top neighborhoods are subsets of the ``k`` outside vertices
    with sizes in ``sizes``.  A top multiplicity vector is drawn from the
    solution space of the pair/triple parity system, optionally with the
    degree parity of outside vertex ``b`` forced to ``parity[b]``.  With
    ``twins`` some tops are duplicated (duplicates cancel in every parity).
    ``inner_p`` adds random edges inside ``V \\ S``.  Returns None when the
    drawn instance has no tops.
    """
    sizes = range(1, k + 1) if sizes is None else sizes
    cands = _subsets(k, sizes)
    rng.shuffle(cands)
    cands = cands[:max_tops]
    eqs, rhs = [], 0
    for r in (2, 3):
        for c in combinations(range(k), r):
            mask = sum(1 << i for i in c)
            eqs.append(sum(1 << j for j, nb in enumerate(cands) if nb & mask == mask))
    for b, bit in (parity or {}).items():
        if bit:
            rhs |= 1 << len(eqs)
        eqs.append(sum(1 << j for j, nb in enumerate(cands) if nb >> b & 1))
    space = solve(F2Matrix(tuple(eqs), len(cands)), rhs)
    if not space.consistent:
        return None
    x = space.particular
    for v in space.basis:
        if rng.random() < 0.5:
            x ^= v
    tops = [nb for j, nb in enumerate(cands) if x >> j & 1]
    if twins and tops:
        for nb in rng.sample(tops, min(len(tops), 2)):
            tops += [nb, nb]
    if not tops:
        return None
    n = k + len(tops)
    edges = [(b, k + j) for j, nb in enumerate(tops) for b in range(k) if nb >> b & 1]
    edges += [(u, v) for u, v in combinations(range(k), 2) if rng.random() < inner_p]
    g = Graph.from_edges(n, edges)
    s = VertexSet.of(n, range(k, n))
    if shuffle:
        perm = list(range(n))
        rng.shuffle(perm)
        g = relabel(g, perm)
        s = VertexSet.of(n, (perm[u] for u in s))
    return g, s



# hypothesis strategies

from hypothesis import strategies as st  # noqa: E402


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 10) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def graph_with_vertex(draw, max_n: int = 10) -> tuple[Graph, int]:
    g = draw(graphs(1, max_n))
    return g, draw(st.integers(0, g.n - 1))


@st.composite
def graph_with_edge(draw, max_n: int = 10) -> tuple[Graph, int, int]:
    g = draw(graphs(2, max_n).filter(lambda h: h.num_edges > 0))
    u, v = draw(st.sampled_from(g.edges()))
    return g, u, v


@st.composite
def two_incident_instances(draw, max_k: int = 5, max_tops: int = 10, **kw):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    k = draw(st.integers(1, max_k))
    inst = random_2incident(rng, k, max_tops, **kw)
    if inst is None:
        return Graph.empty(k), VertexSet.of(k, ())
    return inst


def extended_counterexample(rng: random.Random, base) -> tuple[Graph, VertexSet] | None:
    """A catalog counterexample plus a random 2-incident batch of extra tops."""
    k = len(base.bottom)
    extra = random_2incident(rng, k, 10, shuffle=False)
    if extra is None:
        return None
    eg, es = extra
    tops = [base.graph.rows[a] for a in base.top] + [eg.rows[a] for a in es]
    n = k + len(tops)
    g = Graph.from_edges(n, [(b, k + j) for j, nb in enumerate(tops) for b in range(k) if nb >> b & 1])
    perm = list(range(n))
    rng.shuffle(perm)
    return relabel(g, perm), VertexSet.of(n, (perm[u] for u in range(k, n)))
