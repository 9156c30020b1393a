"""Edge-list and graph6 serialization.

Edge-list format::

    # comment lines are ignored, as are blank lines
    n 4
    0 1
    1 2
    S: 0,2          (optional, distinguished vertex set)

The header ``n <count>`` is the first significant line.  Each edge line is
``<u> <v>``; the serializer always writes ``u < v`` in lexicographic order, the
parser also accepts ``u > v``.  An optional ``S:`` line carries a vertex set
(the catalog emits one); :func:`parse_edgelist` ignores it and
:func:`parse_split` returns it.
"""

from __future__ import annotations

from lulc.errors import FormatError
from lulc.graph import Graph, VertexSet

GRAPH6_MAX_N = 62
GRAPH6_HEADER = ">>graph6<<"


def parse_vertex_list(text: str) -> list[int]:
    """Parse ``"1,4,7..9"`` (inclusive ranges) into a sorted list."""
    out: set[int] = set()
    text = text.strip()
    if not text:
        return []
    for part in text.split(","):
        part = part.strip()
        try:
            if ".." in part:
                lo, hi = part.split("..")
                lo_i, hi_i = int(lo), int(hi)
                if hi_i < lo_i:
                    raise FormatError(f"empty range {part!r}")
                out.update(range(lo_i, hi_i + 1))
            else:
                out.add(int(part))
        except ValueError as exc:
            raise FormatError(f"bad vertex list item {part!r}") from exc
    return sorted(out)


def format_vertex_list(vertices) -> str:
    return ",".join(str(v) for v in sorted(vertices))


def _significant(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse_split(text: str) -> tuple[Graph, VertexSet | None]:
    lines = _significant(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise FormatError("empty edge list: missing 'n <count>' header") from None
    parts = header.split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
        raise FormatError(f"line {lineno}: malformed header {header!r}")
    n = int(parts[1])
    rows = [0] * n
    s = None
    for lineno, line in lines:
        if line.startswith("S:"):
            if s is not None:
                raise FormatError(f"line {lineno}: second S: line")
            members = parse_vertex_list(line[2:])
            if any(v >= n for v in members):
                raise FormatError(f"line {lineno}: S member out of range")
            s = VertexSet.of(n, members)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected '<u> <v>', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if u == v:
            raise FormatError(f"line {lineno}: self-loop at {u}")
        if min(u, v) < 0 or max(u, v) >= n:
            raise FormatError(f"line {lineno}: vertex index out of range for n={n}")
        if rows[u] >> v & 1:
            raise FormatError(f"line {lineno}: duplicate edge {{{u},{v}}}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, rows, check=False), s


def parse_edgelist(text: str) -> Graph:
    return parse_split(text)[0]


def serialize_edgelist(g: Graph, s: VertexSet | None = None) -> str:
    lines = [f"n {g.n}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    if s is not None:
        lines.append(f"S: {format_vertex_list(g.vertex_set(s))}")
    return "\n".join(lines) + "\n"


# graph6: N(n) then the upper triangle column by column, 6 bits per byte


def serialize_graph6(g: Graph, header: bool = False) -> str:
    if g.n > GRAPH6_MAX_N:
        raise FormatError(f"graph6 supports n <= {GRAPH6_MAX_N}, got {g.n}")
    bits = [g.rows[i] >> j & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = val << 1 | b
        chars.append(chr(63 + val))
    return (GRAPH6_HEADER if header else "") + "".join(chars)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if not s:
        raise FormatError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d < 64 for d in data):
        raise FormatError("graph6 character outside printable range 63..126")
    n = data[0]
    if n > GRAPH6_MAX_N:
        raise FormatError(f"graph6 header: only n <= {GRAPH6_MAX_N} supported")
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    if len(data) - 1 != expected:
        raise FormatError(f"graph6 length mismatch: expected {expected} data bytes for n={n}")
    bits = [(d >> (5 - k)) & 1 for d in data[1:] for k in range(6)]
    if any(bits[nbits:]):
        raise FormatError("graph6 padding bits must be zero")
    rows = [0] * n
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos += 1
    return Graph(n, rows, check=False)


def parse_graph(text: str, fmt: str = "edgelist") -> Graph:
    if fmt == "edgelist":
        return parse_edgelist(text)
    if fmt == "graph6":
        return parse_graph6(text)
    raise FormatError(f"unknown graph format {fmt!r}")


def serialize_graph(g: Graph, fmt: str = "edgelist", s: VertexSet | None = None) -> str:
    if fmt == "edgelist":
        return serialize_edgelist(g, s)
    if fmt == "graph6":
        return serialize_graph6(g) + "\n"
    raise FormatError(f"unknown graph format {fmt!r}")
