"""``lulc`` command-line interface.

Exit codes: 0 when a verdict was computed (negative verdicts included),
1 on a precondition or input error, 2 when a resource guard (cap, qubit
limit, budget) was exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path
from typing import Any

from lulc import catalog as catalog_mod
from lulc import local, recognizer, reduction, statevec, triortho
from lulc.errors import LulcError, PreconditionError, ResourceLimitError
from lulc.graph import BipartiteSplit, Graph, VertexSet, local_complement, pivot, two_coloring
from lulc.graphio import (
    format_vertex_list,
    parse_graph,
    parse_split,
    parse_vertex_list,
    serialize_graph,
)

EXIT_OK, EXIT_PRECONDITION, EXIT_RESOURCE = 0, 1, 2


class Result:
    """What a subcommand produced: printed text plus report fields."""

    def __init__(self, text: str, verdict: Any = None, details: dict | None = None,
                 code: int = EXIT_OK):
        self.text = text
        self.verdict = verdict
        self.details = details or {}
        self.code = code


# ------------------------------------------------------------------ input


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc.strerror}") from exc


def _load(path: str, fmt: str) -> tuple[Graph, VertexSet | None]:
    text = _read(path)
    if fmt == "edgelist":
        return parse_split(text)
    return parse_graph(text, fmt), None


def _load_with_set(args, attr: str = "s") -> tuple[Graph, VertexSet]:
    g, s_file = _load(args.graph, args.format)
    spec = getattr(args, attr, None)
    if spec is not None:
        return g, g.vertex_set(parse_vertex_list(spec))
    if s_file is None:
        raise PreconditionError("no vertex set: pass -s or add an 'S:' line to the graph file")
    return g, s_file


def _pair(text: str) -> tuple[int, int]:
    items = [p.strip() for p in text.split(",")]
    if len(items) != 2:
        raise PreconditionError(f"expected U,V, got {text!r}")
    try:
        return int(items[0]), int(items[1])
    except ValueError:
        raise PreconditionError(f"expected U,V, got {text!r}") from None


def _emit_graph(args, g: Graph, s: VertexSet | None = None) -> str:
    text = serialize_graph(g, args.format, s if args.format == "edgelist" else None)
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    return text


def _set_dict(s: VertexSet | None):
    return None if s is None else s.to_list()


# -------------------------------------------------------------- commands


def cmd_check_2incident(args) -> Result:
    g, s = _load_with_set(args)
    rep = local.is_2_incident(g, s)
    details = {
        "is_incident": rep.is_incident,
        "violating_pair": list(rep.violating_pair) if rep.violating_pair else None,
        "violating_triple": list(rep.violating_triple) if rep.violating_triple else None,
    }
    return Result(rep.describe(), rep.is_incident, details)


def cmd_apply_2lc(args) -> Result:
    g, s = _load_with_set(args)
    h = local.two_local_complement(g, s)
    return Result(_emit_graph(args, h, s), None, {"edges": h.edges()})


def cmd_apply_lc(args) -> Result:
    g, _ = _load(args.graph, args.format)
    h = local_complement(g, args.u)
    return Result(_emit_graph(args, h), None, {"edges": h.edges()})


def cmd_pivot(args) -> Result:
    g, _ = _load(args.graph, args.format)
    u, v = _pair(args.e)
    h = pivot(g, u, v)
    return Result(_emit_graph(args, h), None, {"edges": h.edges()})


def cmd_find_witness(args) -> Result:
    g, s = _load_with_set(args)
    w = local.find_one_lc_witness(g, s)
    text = "none" if w is None else format_vertex_list(w)
    return Result(text, w is not None, {"witness": _set_dict(w)})


def cmd_profile(args) -> Result:
    g, s = _load_with_set(args)
    bound = g.n if args.bound is None else args.bound
    prof = local.property_profile(g, s, bound)
    d = prof.as_dict()
    text = " ".join(f"{k}={d[k]}" for k in ("p1", "p2", "p3", "p4", "p5")) + f" bound={bound}"
    return Result(text, prof.all(), d)


def cmd_reduce(args) -> Result:
    g, s = _load_with_set(args)
    split, trace = reduction.reduce(g, s, bound=args.bound, budget=args.budget)
    if args.emit_trace:
        Path(args.emit_trace).write_text(trace.to_text())
    text = _emit_graph(args, split.graph, split.s)
    details = {"n": split.graph.n, "s": split.s.to_list(), "steps": len(trace),
               "trace": [st.to_line() for st in trace]}
    return Result(text, None, details)


def cmd_replay(args) -> Result:
    g, s = _load_with_set(args)
    trace = reduction.ReductionTrace.from_text(_read(args.trace))
    h, t = reduction.replay(g, s, trace)
    return Result(_emit_graph(args, h, t), None, {"n": h.n, "s": t.to_list()})


def cmd_matrix(args) -> Result:
    g, s = _load_with_set(args)
    gm = triortho.graph_to_matrix(BipartiteSplit(g, s))
    text = triortho.matrix_to_text(gm)
    if args.output:
        Path(args.output).write_text(text)
    details = {"shape": list(gm.m.shape), "row_labels": list(gm.row_labels),
               "col_labels": list(gm.col_labels)}
    return Result(text, None, details)


def _load_matrix(path: str) -> triortho.GraphMatrix:
    return triortho.GraphMatrix.from_f2(triortho.parse_matrix(_read(path)))


def cmd_triortho_check(args) -> Result:
    rep = triortho.check_lemma2(_load_matrix(args.matrix))
    d = rep.as_dict()
    text = " ".join(f"{k}={d[k]}" for k in ("odd_columns", "no_repeated_columns", "triorthogonal"))
    return Result(text, rep.all(), d)


def cmd_unital(args) -> Result:
    ok = triortho.is_unital(triortho.parse_matrix(_read(args.matrix)))
    return Result(f"unital={ok}", ok, {"unital": ok})


def cmd_lc_equiv(args) -> Result:
    g1, _ = _load(args.g1, args.format)
    g2, _ = _load(args.g2, args.format)
    if args.method == "orbit":
        dec = recognizer.lc_equivalent_orbit(g1, g2, cap=args.cap)
    else:
        dec = recognizer.lc_equivalent_linear(g1, g2, dim_cap=args.dim_cap, budget=args.budget)
    # INCONCLUSIVE means the dimension cap or the budget bound the search
    code = EXIT_RESOURCE if dec.verdict is recognizer.Verdict.INCONCLUSIVE else EXIT_OK
    return Result(dec.verdict.value, dec.verdict.value, dec.as_dict(), code)


def cmd_verify(args) -> Result:
    g, s_file = _load(args.graph, args.format)
    mq = args.max_qubits
    kind = args.kind
    if kind == "lc":
        if args.u is None:
            raise PreconditionError("verify lc needs -u")
        ok = statevec.verify_lc_formula(g, args.u, max_qubits=mq)
        details: dict[str, Any] = {"u": args.u}
    elif kind == "pivot":
        if args.e is None:
            raise PreconditionError("verify pivot needs -e U,V")
        u, v = _pair(args.e)
        side = two_coloring(g)
        if side is None:
            raise PreconditionError("verify pivot needs a bipartite graph")
        ok = statevec.verify_pivot_formula(BipartiteSplit(g, side), u, v, max_qubits=mq)
        details = {"edge": [u, v]}
    else:
        s = g.vertex_set(parse_vertex_list(args.s)) if args.s is not None else s_file
        if s is None:
            raise PreconditionError(f"verify {kind} needs -s or an 'S:' line")
        if kind == "2lc":
            ok = statevec.verify_2lc_formula(g, s, max_qubits=mq)
            details = {"s": s.to_list()}
        else:
            found = statevec.scan_angle_assignments(g, s, step=math.pi / args.step_div,
                                                    x_angle=math.pi / 4, max_qubits=mq)
            ok = bool(found)
            details = {"s": s.to_list(), "assignments": [
                {"angles": {str(k): v for k, v in a.as_dict().items()}, "edges": h.edges()}
                for a, h in found]}
    return Result(f"{kind}: {'pass' if ok else 'fail'}", ok, details)


def cmd_catalog(args) -> Result:
    entry = catalog_mod.get(args.name)
    if args.companion:
        if entry.companion is None:
            raise PreconditionError(f"{args.name} has no companion graph")
        text = _emit_graph(args, entry.companion)
    else:
        text = _emit_graph(args, entry.graph, entry.s)
    return Result(text, None, {"n": entry.graph.n, "s": entry.s.to_list(), "notes": entry.notes})


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lulc", description="Graph-state rewrites and LC-equivalence.")
    p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")
    p.add_argument("--report", metavar="FILE", help="write a JSON report")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    def graph_set(sp, need_set=True):
        sp.add_argument("-g", "--graph", required=True)
        if need_set:
            sp.add_argument("-s", help="vertex list such as 0,3,5..9 (default: the file's S: line)")

    def out(sp):
        sp.add_argument("-o", "--output")

    sp = add("check-2incident", cmd_check_2incident, "test 2-incidence of S")
    graph_set(sp)
    sp = add("apply-2lc", cmd_apply_2lc, "2-local complementation over S")
    graph_set(sp)
    out(sp)
    sp = add("apply-lc", cmd_apply_lc, "local complementation at a vertex")
    graph_set(sp, False)
    sp.add_argument("-u", type=int, required=True)
    out(sp)
    sp = add("pivot", cmd_pivot, "pivot on an edge")
    graph_set(sp, False)
    sp.add_argument("-e", required=True, metavar="U,V")
    out(sp)
    sp = add("find-witness", cmd_find_witness, "subset A of S with G *1 A = G *2 S")
    graph_set(sp)
    sp = add("profile", cmd_profile, "reduction properties p1..p5")
    graph_set(sp)
    sp.add_argument("--bound", type=int)
    sp = add("reduce", cmd_reduce, "run the reduction")
    graph_set(sp)
    sp.add_argument("--bound", type=int)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--emit-trace", metavar="FILE")
    out(sp)
    sp = add("replay", cmd_replay, "replay a reduction trace")
    graph_set(sp)
    sp.add_argument("-t", "--trace", required=True)
    out(sp)
    sp = add("matrix", cmd_matrix, "emit the [I|A] matrix of a split")
    graph_set(sp)
    out(sp)
    sp = add("triortho-check", cmd_triortho_check, "column and triorthogonality checks")
    sp.add_argument("-m", "--matrix", required=True)
    sp = add("unital", cmd_unital, "all-ones vector in the row span")
    sp.add_argument("-m", "--matrix", required=True)
    sp = add("lc-equiv", cmd_lc_equiv, "decide LC-equivalence")
    sp.add_argument("-g1", required=True)
    sp.add_argument("-g2", required=True)
    sp.add_argument("--method", choices=("orbit", "linear"), default="linear")
    sp.add_argument("--dim-cap", type=int, default=recognizer.DEFAULT_DIM_CAP)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--cap", type=int, default=recognizer.DEFAULT_ORBIT_CAP)
    sp = add("verify", cmd_verify, "state-vector check of a rotation formula")
    sp.add_argument("kind", choices=("lc", "pivot", "2lc", "angles"))
    graph_set(sp)
    sp.add_argument("-u", type=int)
    sp.add_argument("-e", metavar="U,V")
    sp.add_argument("--step-div", type=int, default=4, help="angle grid step is pi/N")
    sp.add_argument("--max-qubits", type=int, help="overrides LULC_MAX_QUBITS")
    sp = add("catalog", cmd_catalog, "emit a catalog graph")
    sp.add_argument("name", choices=sorted(catalog_mod.CATALOG))
    sp.add_argument("--companion", action="store_true")
    out(sp)
    return p


def _write_report(path: str, command: str, verdict, details: dict, seconds: float, error=None) -> None:
    report = {"subcommand": command, "verdict": verdict, "details": details,
              "timing": {"seconds": round(seconds, 6)}}
    if error is not None:
        report["error"] = error
    Path(path).write_text(json.dumps(report, sort_keys=True, indent=2, default=str) + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        res = args.func(args)
    except ResourceLimitError as exc:
        code, msg = EXIT_RESOURCE, str(exc)
    except (PreconditionError, LulcError) as exc:
        code, msg = EXIT_PRECONDITION, str(exc)
    else:
        if res.text and not getattr(args, "output", None):  # -o replaces stdout
            sys.stdout.write(res.text if res.text.endswith("\n") else res.text + "\n")
        if args.report:
            _write_report(args.report, args.command, res.verdict, res.details,
                          time.perf_counter() - start)
        return res.code
    print(f"lulc: error: {msg}", file=sys.stderr)
    if args.report:
        _write_report(args.report, args.command, None, {}, time.perf_counter() - start, msg)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
