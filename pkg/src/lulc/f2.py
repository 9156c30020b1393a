"""Dense linear algebra over GF(2) on int bitsets.

A matrix is a tuple of row ints; bit ``j`` of a row is column ``j``.
Elimination always pivots on the lowest-index column first and, within a
column, on the first available row, so every output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from lulc.errors import FormatError, PreconditionError


@dataclass(frozen=True)
class F2Matrix:
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        if self.ncols < 0:
            raise PreconditionError("negative column count")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise PreconditionError(f"row has bits outside {self.ncols} columns")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> F2Matrix:
        return cls((0,) * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> F2Matrix:
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def from_array(cls, a) -> F2Matrix:
        a = np.asarray(a, dtype=np.int64) & 1
        if a.ndim != 2:
            raise PreconditionError("expected a 2-D array")
        rows = tuple(sum(1 << int(j) for j in np.flatnonzero(row)) for row in a)
        return cls(rows, a.shape[1])

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> F2Matrix:
        if not lines:
            return cls((), 0)
        ncols = len(lines[0])
        rows = []
        for line in lines:
            if len(line) != ncols or set(line) - {"0", "1"}:
                raise FormatError(f"bad matrix row {line!r}")
            rows.append(sum(1 << j for j, ch in enumerate(line) if ch == "1"))
        return cls(tuple(rows), ncols)

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.ncols):
                out[i, j] = r >> j & 1
        return out

    def to_strings(self) -> list[str]:
        return ["".join("1" if r >> j & 1 else "0" for j in range(self.ncols)) for r in self.rows]

    def column(self, j: int) -> int:
        """Column ``j`` as an int over rows (bit ``i`` = row ``i``)."""
        return sum(1 << i for i, r in enumerate(self.rows) if r >> j & 1)

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> F2Matrix:
        return F2Matrix(tuple(self.columns()), self.nrows)

    def apply(self, x: int) -> int:
        """``M x`` as an int over rows."""
        return sum(1 << i for i, r in enumerate(self.rows) if (r & x).bit_count() & 1)

    def hstack(self, other: F2Matrix) -> F2Matrix:
        if self.nrows != other.nrows:
            raise PreconditionError("row count mismatch in hstack")
        return F2Matrix(
            tuple(a | b << self.ncols for a, b in zip(self.rows, other.rows)),
            self.ncols + other.ncols,
        )

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


@dataclass(frozen=True)
class AffineSolutionSpace:
    """Solutions of ``M x = t``: ``particular + span(basis)``, or empty."""

    particular: int | None
    basis: tuple[int, ...] = field(default=())
    nvars: int = 0

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _rref(rows: Iterable[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [r for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        bit = 1 << col
        sel = None
        for i in range(top, len(work)):
            if work[i] & bit:
                sel = i
                break
        if sel is None:
            continue
        work[top], work[sel] = work[sel], work[top]
        prow = work[top]
        for i in range(len(work)):
            if i != top and work[i] & bit:
                work[i] ^= prow
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def row_reduce(m: F2Matrix) -> F2Matrix:
    """Reduced row echelon form (zero rows dropped), same row span."""
    reduced, _ = _rref(m.rows, m.ncols)
    return F2Matrix(tuple(reduced), m.ncols)


def rank(m: F2Matrix) -> int:
    return len(_rref(m.rows, m.ncols)[1])


def _kernel_basis(reduced: list[int], pivots: list[int], ncols: int) -> list[int]:
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = 1 << f
        for row, p in zip(reduced, pivots):
            if row >> f & 1:
                vec |= 1 << p
        basis.append(vec)
    return basis


def nullspace(m: F2Matrix) -> list[int]:
    """Basis of ``{x : M x = 0}``, one vector per free column in ascending order."""
    reduced, pivots = _rref(m.rows, m.ncols)
    return _kernel_basis(reduced, pivots, m.ncols)


def solve(m: F2Matrix, target: int) -> AffineSolutionSpace:
    """All ``x`` with ``M x = target`` (``target`` bit ``i`` is row ``i``)."""
    if target < 0 or target >> m.nrows:
        raise PreconditionError(f"target has bits outside {m.nrows} rows")
    aug = 1 << m.ncols
    rows = [r | (aug if target >> i & 1 else 0) for i, r in enumerate(m.rows)]
    reduced, pivots = _rref(rows, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return AffineSolutionSpace(None, (), m.ncols)
    particular = 0
    for row, p in zip(reduced, pivots):
        if row & aug:
            particular |= 1 << p
    mask = aug - 1
    basis = _kernel_basis([r & mask for r in reduced], pivots, m.ncols)
    return AffineSolutionSpace(particular, tuple(basis), m.ncols)


def in_row_span(m: F2Matrix, vec: int) -> bool:
    if vec < 0 or vec >> m.ncols:
        raise PreconditionError(f"vector has bits outside {m.ncols} columns")
    reduced, pivots = _rref(m.rows, m.ncols)
    for row, p in zip(reduced, pivots):
        if vec >> p & 1:
            vec ^= row
    return vec == 0


def triple_product_weight_parity(r1: int, r2: int, r3: int, width: int | None = None) -> int:
    """Parity of ``|{i : r1_i = r2_i = r3_i = 1}|``.

    With ``width`` given, each argument must fit in that many bits.
    """
    if width is not None:
        for r in (r1, r2, r3):
            if r < 0 or r >> width:
                raise PreconditionError(f"row wider than {width}")
    return (r1 & r2 & r3).bit_count() & 1
