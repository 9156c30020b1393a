"""Bipartite splits as generator matrices ``[I | A]`` and triorthogonality.

For a split with outside vertices ``T`` (rows, ascending) and ``S``
(columns of ``A``, ascending), ``A[b, a] = 1`` iff ``a ~ b``.  Column labels
are ``T`` then ``S``; every correspondence below goes through these labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce as _fold
from itertools import combinations, combinations_with_replacement
from operator import xor

from lulc.errors import FormatError, PreconditionError
from lulc.f2 import F2Matrix, in_row_span, triple_product_weight_parity
from lulc.graph import BipartiteSplit, Graph, VertexSet


@dataclass(frozen=True)
class GraphMatrix:
    m: F2Matrix
    row_labels: tuple[int, ...]
    col_labels: tuple[int, ...]

    def __post_init__(self) -> None:
        r, c = self.m.shape
        if len(self.row_labels) != r or len(self.col_labels) != c:
            raise PreconditionError("label counts do not match the matrix shape")
        if tuple(self.col_labels[:r]) != tuple(self.row_labels):
            raise PreconditionError("identity columns must carry the row labels")
        if sorted(self.col_labels) != list(range(c)):
            raise PreconditionError("column labels must be a permutation of 0..n-1")
        mask = (1 << r) - 1
        for i, row in enumerate(self.m.rows):
            if row & mask != 1 << i:
                raise PreconditionError(f"row {i}: left block is not the identity")

    @property
    def k(self) -> int:
        """Number of rows (outside vertices)."""
        return self.m.nrows

    @property
    def n(self) -> int:
        return self.m.ncols

    def a_block(self) -> list[int]:
        """Rows of ``A`` as ints over the S columns."""
        return [row >> self.k for row in self.m.rows]

    @classmethod
    def from_f2(cls, m: F2Matrix) -> GraphMatrix:
        """Positional labels: rows ``0..k-1``, columns ``0..n-1``."""
        try:
            return cls(m, tuple(range(m.nrows)), tuple(range(m.ncols)))
        except PreconditionError as exc:
            raise FormatError(f"malformed [I|A] block: {exc}") from exc


def graph_to_matrix(split: BipartiteSplit) -> GraphMatrix:
    g = split.graph
    outside = split.t.to_list()
    members = split.s.to_list()
    k = len(outside)
    rows = []
    for i, b in enumerate(outside):
        row = 1 << i
        for j, a in enumerate(members):
            if g.rows[b] >> a & 1:
                row |= 1 << (k + j)
        rows.append(row)
    return GraphMatrix(F2Matrix(tuple(rows), g.n), tuple(outside), tuple(outside + members))


def matrix_to_graph(gm: GraphMatrix) -> BipartiteSplit:
    k = gm.k
    edges = []
    for i, arow in enumerate(gm.a_block()):
        b = gm.row_labels[i]
        for j in range(gm.n - k):
            if arow >> j & 1:
                edges.append((b, gm.col_labels[k + j]))
    g = Graph.from_edges(gm.n, edges)
    return BipartiteSplit(g, VertexSet.of(gm.n, gm.col_labels[k:]))


@dataclass(frozen=True)
class MatrixConditionsReport:
    odd_columns: bool
    no_repeated_columns: bool
    triorthogonal: bool
    even_column: int | None = None
    repeated_columns: tuple[int, int] | None = None
    bad_triple: tuple[int, int, int] | None = None

    def all(self) -> bool:
        return self.odd_columns and self.no_repeated_columns and self.triorthogonal

    def as_dict(self) -> dict:
        return {
            "odd_columns": self.odd_columns,
            "no_repeated_columns": self.no_repeated_columns,
            "triorthogonal": self.triorthogonal,
            "even_column": self.even_column,
            "repeated_columns": list(self.repeated_columns) if self.repeated_columns else None,
            "bad_triple": list(self.bad_triple) if self.bad_triple else None,
        }


def _first_bad_triple(rows: list[int]) -> tuple[int, int, int] | None:
    for i, j, l in combinations_with_replacement(range(len(rows)), 3):
        if triple_product_weight_parity(rows[i], rows[j], rows[l]):
            return i, j, l
    return None


def _triorthogonal_split_form(rows: list[int]) -> bool:
    # even rows, even pairwise products, even distinct triples
    return (
        all(r.bit_count() % 2 == 0 for r in rows)
        and all((a & b).bit_count() % 2 == 0 for a, b in combinations(rows, 2))
        and all(triple_product_weight_parity(a, b, c) == 0 for a, b, c in combinations(rows, 3))
    )


def check_lemma2(gm: GraphMatrix) -> MatrixConditionsReport:
    """Odd column weights, distinct columns, and triorthogonal rows.

    Triorthogonality ranges over all row triples with repetition; the
    equivalent form (even rows, even pairs, even distinct triples) is also
    computed and must agree.
    """
    cols = gm.m.columns()
    even = next((j for j, c in enumerate(cols) if c.bit_count() % 2 == 0), None)
    first_seen: dict[int, int] = {}
    repeated = None
    for j, c in enumerate(cols):
        if c in first_seen:
            repeated = (first_seen[c], j)
            break
        first_seen[c] = j
    rows = list(gm.m.rows)
    bad = _first_bad_triple(rows)
    tri = bad is None
    if tri != _triorthogonal_split_form(rows):
        raise AssertionError("the two triorthogonality formulations disagree")
    return MatrixConditionsReport(even is None, repeated is None, tri, even, repeated, bad)


def is_unital(gm: GraphMatrix | F2Matrix) -> bool:
    """Does the row span contain the all-ones vector?"""
    m = gm.m if isinstance(gm, GraphMatrix) else gm
    ones = (1 << m.ncols) - 1
    result = in_row_span(m, ones)
    if all(c.bit_count() % 2 for c in m.columns()):
        # every column odd: the sum of all rows is the all-ones vector
        if _fold(xor, m.rows, 0) != ones:
            raise AssertionError("odd columns but the row sum is not all-ones")
        assert result
    return result


def _normalize(rows: list[int], row_labels: list[int], col_labels: list[int], ncols: int) -> GraphMatrix:
    k = len(rows)
    row_order = sorted(range(k), key=lambda i: row_labels[i])
    a_order = sorted(range(k, ncols), key=lambda j: col_labels[j])
    col_order = row_order + a_order  # identity column i sits at position i
    new_rows = []
    for i in row_order:
        r = rows[i]
        new_rows.append(sum(1 << p for p, j in enumerate(col_order) if r >> j & 1))
    new_row_labels = tuple(row_labels[i] for i in row_order)
    new_col_labels = tuple(col_labels[j] for j in col_order)
    return GraphMatrix(F2Matrix(tuple(new_rows), ncols), new_row_labels, new_col_labels)


def matrix_pivot(gm: GraphMatrix, r: int, c: int) -> GraphMatrix:
    """Pivot at row ``r`` and ``A``-column ``c``; the result is back in ``[I|A]`` form.

    Row ``r`` is added to every other row with a 1 in that column, the
    identity column of row ``r`` is exchanged with it, and rows/columns are
    re-sorted by label.  The matching graph is ``G ^ ab`` with
    ``S ^ {a, b}``, where ``b = row_labels[r]`` and ``a`` labels the column.
    """
    k = gm.k
    if not 0 <= r < k or not 0 <= c < gm.n - k:
        raise PreconditionError("pivot position out of range")
    col = k + c
    rows = list(gm.m.rows)
    if not rows[r] >> col & 1:
        raise PreconditionError(f"zero pivot entry at ({r}, {c})")
    for i in range(k):
        if i != r and rows[i] >> col & 1:
            rows[i] ^= rows[r]
    bit_r, bit_c = 1 << r, 1 << col
    swapped = []
    for row in rows:
        hr, hc = row & bit_r, row & bit_c
        row &= ~(bit_r | bit_c)
        swapped.append(row | (bit_c if hr else 0) | (bit_r if hc else 0))
    col_labels = list(gm.col_labels)
    col_labels[r], col_labels[col] = col_labels[col], col_labels[r]
    row_labels = list(gm.row_labels)
    row_labels[r] = col_labels[r]
    return _normalize(swapped, row_labels, col_labels, gm.n)


# text format: "rows cols" then one 0/1 string per row


def matrix_to_text(m: GraphMatrix | F2Matrix) -> str:
    f2m = m.m if isinstance(m, GraphMatrix) else m
    lines = [f"{f2m.nrows} {f2m.ncols}"] + f2m.to_strings()
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> F2Matrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise FormatError(f"malformed matrix header {lines[0]!r}")
    nrows, ncols = int(head[0]), int(head[1])
    body = lines[1:]
    if len(body) != nrows:
        raise FormatError(f"expected {nrows} rows, found {len(body)}")
    if any(len(row) != ncols for row in body):
        raise FormatError(f"every row must have {ncols} entries")
    m = F2Matrix.from_strings(body) if body else F2Matrix((), ncols)
    return m
