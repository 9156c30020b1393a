"""Constructive reduction of a 2-incident split to an all-odd, twin-free split.

:func:`reduce` runs four steps:

1. drop every edge with both endpoints outside ``S``;
2. drop degree-1 vertices of ``S``, then twin pairs inside ``S`` one pair at
   a time, then degree-0 vertices;
3. while some outside vertex ``b`` has even degree, pivot on ``ab`` for a
   neighbor ``a`` in ``S``, delete ``b``, remove ``a`` from ``S``, and go
   back to step 2;
4. if some vertex of ``S`` has even degree, add one outside vertex adjacent
   to exactly those vertices and go back to step 3.

Ties go to the lowest index (lexicographically first pair).  Every effective
step is recorded in a :class:`ReductionTrace`, which can be replayed and
audited.  Steps that would change nothing are not recorded, so an input that
is already reduced yields an empty trace.

Vertex indices in a trace refer to the graph *at the time of the step*;
deletions compact indices as :func:`lulc.graph.remove_vertex` does.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from lulc.errors import FormatError, PreconditionError, ResourceLimitError
from lulc.graph import (
    BipartiteSplit,
    Graph,
    VertexSet,
    add_vertex_adjacent_to,
    are_twins,
    compact_set,
    drop_edges_within,
    is_bipartite_split,
    is_independent,
    pivot,
    remove_vertex,
    remove_vertices,
)
from lulc.local import find_one_lc_witness, is_2_incident


class StepKind(enum.Enum):
    DROP_INTERNAL_EDGES = "DROP_INTERNAL_EDGES"
    DROP_DEG1_S = "DROP_DEG1_S"
    DROP_TWIN_PAIR = "DROP_TWIN_PAIR"
    DROP_ISOLATED = "DROP_ISOLATED"
    PIVOT_DELETE = "PIVOT_DELETE"
    ADD_B_EVEN = "ADD_B_EVEN"


@dataclass(frozen=True)
class Step:
    kind: StepKind
    args: tuple[int, ...] = ()
    n_after: int = 0

    def to_line(self) -> str:
        args = " ".join(str(a) for a in self.args)
        return f"{self.kind.value} {args} n={self.n_after}".replace("  ", " ")

    @classmethod
    def from_line(cls, line: str) -> Step:
        parts = line.split()
        if not parts or not parts[-1].startswith("n="):
            raise FormatError(f"malformed trace line {line!r}")
        try:
            kind = StepKind(parts[0])
            args = tuple(int(a) for a in parts[1:-1])
            n_after = int(parts[-1][2:])
        except ValueError as exc:
            raise FormatError(f"malformed trace line {line!r}") from exc
        return cls(kind, args, n_after)


@dataclass
class ReductionTrace:
    steps: list[Step] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def to_text(self) -> str:
        return "".join(step.to_line() + "\n" for step in self.steps)

    @classmethod
    def from_text(cls, text: str) -> ReductionTrace:
        steps = [
            Step.from_line(line.strip())
            for line in text.splitlines()
            if line.strip() and not line.lstrip().startswith("#")
        ]
        return cls(steps)


class ReplayError(PreconditionError):
    """A trace step does not apply to the graph it is replayed on."""


class ReductionInvariantError(AssertionError):
    def __init__(self, message: str, trace: ReductionTrace):
        self.trace = trace
        super().__init__(message)


# ------------------------------------------------------------ single steps


def pivot_variant(
    g: Graph, s: VertexSet, a: int, b: int, check_p5: bool = False
) -> tuple[Graph, VertexSet]:
    """Pivot on ``ab`` (``a`` in ``S``, ``b`` outside) keeping a 2-incident split.

    Odd ``deg(b)``: returns ``(G ^ ab, S ^ {a, b})``.
    Even ``deg(b)``: returns ``(G ^ ab - b, S \\ {a})``.
    """
    s = g.vertex_set(s)
    if not is_bipartite_split(g, s):
        raise PreconditionError("pivot_variant needs a split bipartite with respect to S")
    if a not in s or b in s:
        raise PreconditionError("pivot_variant needs a in S and b outside S")
    if not g.has_edge(a, b):
        raise PreconditionError(f"{a} and {b} are not adjacent")
    if not is_2_incident(g, s).is_incident:
        raise PreconditionError("pivot_variant needs a 2-incident S")
    p5_before = check_p5 and find_one_lc_witness(g, s) is None
    h = pivot(g, a, b)
    if g.degree(b) % 2:
        g2, s2 = h, s ^ VertexSet.of(g.n, (a, b))
    else:
        g2 = remove_vertex(h, b)
        s2 = compact_set(s - VertexSet.of(g.n, (a,)), (b,))
    assert is_bipartite_split(g2, s2), "pivot_variant output is not bipartite"
    assert is_2_incident(g2, s2).is_incident, "pivot_variant output is not 2-incident"
    if check_p5 and p5_before:
        assert find_one_lc_witness(g2, s2) is None, "pivot_variant broke property 5"
    return g2, s2


def apply_step(g: Graph, s: VertexSet, step: Step) -> tuple[Graph, VertexSet]:
    """Apply one trace step, validating that it is applicable."""
    k, args = step.kind, step.args

    def need(cond: bool, msg: str) -> None:
        if not cond:
            raise ReplayError(f"{step.to_line()}: {msg}")

    def vertex(u: int) -> int:
        need(0 <= u < g.n, f"vertex {u} out of range")
        return u

    if k is StepKind.DROP_INTERNAL_EDGES:
        need(not args, "takes no arguments")
        out = drop_edges_within(g, s.complement()), s
    elif k in (StepKind.DROP_DEG1_S, StepKind.DROP_ISOLATED):
        need(len(args) == 1, "takes one vertex")
        u = vertex(args[0])
        if k is StepKind.DROP_DEG1_S:
            need(u in s and g.degree(u) == 1, "vertex is not a degree-1 member of S")
        else:
            need(g.degree(u) == 0, "vertex is not isolated")
        out = remove_vertex(g, u), compact_set(s, (u,))
    elif k is StepKind.DROP_TWIN_PAIR:
        need(len(args) == 2, "takes two vertices")
        u, v = vertex(args[0]), vertex(args[1])
        need(u != v and u in s and v in s and are_twins(g, u, v), "not a twin pair in S")
        out = remove_vertices(g, (u, v)), compact_set(s, (u, v))
    elif k is StepKind.PIVOT_DELETE:
        need(len(args) == 2, "takes two vertices")
        a, b = vertex(args[0]), vertex(args[1])
        need(a in s and b not in s and g.has_edge(a, b), "needs adjacent a in S, b outside S")
        need(g.degree(b) % 2 == 0, "b must have even degree")
        h = pivot(g, a, b)
        out = remove_vertex(h, b), compact_set(s - VertexSet.of(g.n, (a,)), (b,))
    elif k is StepKind.ADD_B_EVEN:
        members = [vertex(u) for u in args]
        need(all(u in s for u in members), "neighbors must lie in S")
        g2 = add_vertex_adjacent_to(g, VertexSet.of(g.n, members))
        out = g2, VertexSet(g2.n, s.bits)
    else:  # pragma: no cover
        raise ReplayError(f"unknown step {k}")
    need(out[0].n == step.n_after, f"vertex count {out[0].n} != recorded {step.n_after}")
    return out


def replay(g: Graph, s: VertexSet, trace: ReductionTrace) -> tuple[Graph, VertexSet]:
    s = g.vertex_set(s)
    for step in trace:
        g, s = apply_step(g, s, step)
    return g, s


# --------------------------------------------------------------- pipeline


class _Run:
    def __init__(self, g: Graph, s: VertexSet, budget: int):
        self.g, self.s = g, s
        self.trace = ReductionTrace()
        self.budget = budget

    def do(self, step: Step) -> None:
        if len(self.trace) >= self.budget:
            err = ResourceLimitError(f"reduction exceeded its step budget of {self.budget}")
            err.trace = self.trace
            raise err
        self.g, self.s = apply_step(self.g, self.s, step)
        self.trace.steps.append(step)

    def step1(self) -> None:
        t = self.s.complement().bits
        if any(self.g.rows[u] & t for u in self.s.complement()):
            self.do(Step(StepKind.DROP_INTERNAL_EDGES, (), self.g.n))

    def step2(self) -> None:
        while True:
            g, s = self.g, self.s
            deg1 = next((u for u in s if g.degree(u) == 1), None)
            if deg1 is not None:
                self.do(Step(StepKind.DROP_DEG1_S, (deg1,), g.n - 1))
                continue
            twins = self._first_twin_pair()
            if twins is not None:
                self.do(Step(StepKind.DROP_TWIN_PAIR, twins, g.n - 2))
                continue
            iso = next((u for u in range(g.n) if g.rows[u] == 0), None)
            if iso is not None:
                self.do(Step(StepKind.DROP_ISOLATED, (iso,), g.n - 1))
                continue
            return

    def _first_twin_pair(self) -> tuple[int, int] | None:
        # inside an independent S, twins are vertices with equal neighborhoods
        seen: dict[int, int] = {}
        best = None
        for u in self.s:
            r = self.g.rows[u]
            if r in seen:
                pair = (seen[r], u)
                if best is None or pair < best:
                    best = pair
            else:
                seen[r] = u
        return best

    def step3(self) -> bool:
        g, s = self.g, self.s
        b = next((v for v in s.complement() if g.degree(v) % 2 == 0), None)
        if b is None:
            return False
        a = next(iter(VertexSet(g.n, g.rows[b] & s.bits)))
        self.do(Step(StepKind.PIVOT_DELETE, (a, b), g.n - 1))
        return True

    def step4(self) -> bool:
        even = [u for u in self.s if self.g.degree(u) % 2 == 0]
        if not even:
            return False
        self.do(Step(StepKind.ADD_B_EVEN, tuple(even), self.g.n + 1))
        return True


def reduce(
    g: Graph, s: VertexSet, bound: int | None = None, budget: int | None = None
) -> tuple[BipartiteSplit, ReductionTrace]:
    """Run the four-step reduction; returns the output split and its trace.

    ``bound`` (default ``n + 1``) is asserted on the output vertex count.
    ``budget`` caps the number of trace steps (default ``(n + 2) ** 2``).
    """
    s = g.vertex_set(s)
    if not is_independent(g, s):
        raise PreconditionError("reduce needs an independent S")
    report = is_2_incident(g, s)
    if not report.is_incident:
        raise PreconditionError(f"reduce needs a 2-incident S: {report.describe()}")
    bound = g.n + 1 if bound is None else bound
    run = _Run(g, s, (g.n + 2) ** 2 if budget is None else budget)

    run.step1()
    state = 2
    while True:
        if state == 2:
            run.step2()
            state = 3
        elif state == 3:
            state = 2 if run.step3() else 4
        elif run.step4():
            state = 3
        else:
            break

    out_g, out_s = run.g, run.s
    if out_g.n > bound:
        raise ReductionInvariantError(f"output has {out_g.n} vertices, bound {bound}", run.trace)
    return BipartiteSplit(out_g, out_s), run.trace


# ------------------------------------------------------------------ audit


@dataclass(frozen=True)
class AuditReport:
    ok: bool
    checkpoints: int
    failed_step: int | None = None
    checkpoint: str | None = None
    message: str | None = None


def audit_step_invariants(
    trace: ReductionTrace, g: Graph, s: VertexSet, expensive: bool = False
) -> AuditReport:
    """Replay ``trace`` from ``(g, s)`` and re-check invariants after every step.

    Checkpoints: bipartiteness (a non-bipartite input always starts with
    step 1), 2-incidence of the current ``S``, and with ``expensive``
    set, stability of property 5 when it held on the input.  Reports the
    first failure in trace order.  Raises :class:`ReplayError` when a step
    cannot be applied at all.
    """
    s = g.vertex_set(s)
    p5 = expensive and is_2_incident(g, s).is_incident and find_one_lc_witness(g, s) is None
    checks = 0
    for i, step in enumerate(trace):
        g, s = apply_step(g, s, step)
        checks += 1
        if not is_bipartite_split(g, s):
            return AuditReport(False, checks, i, "bipartite", "split is not bipartite")
        checks += 1
        report = is_2_incident(g, s) if is_independent(g, s) else None
        if report is None or not report.is_incident:
            msg = "S is not independent" if report is None else report.describe()
            return AuditReport(False, checks, i, "2-incident", msg)
        if p5:
            checks += 1
            if find_one_lc_witness(g, s) is not None:
                return AuditReport(False, checks, i, "property-5", "a 1-LC witness appeared")
    return AuditReport(True, checks)
