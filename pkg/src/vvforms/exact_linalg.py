"""Exact rank, kernel and span membership over the rationals.

Elimination is fraction-free: every row is scaled to a primitive integer
vector, a row update is ``pivot * row - entry * pivot_row`` followed by
division by the row content, and only rows with a nonzero entry in the
pivot column are touched.  Pivot choice is deterministic: the first row
(in input order) with a nonzero entry in the leftmost remaining column.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Vector = Sequence  # dense sequence of rationals


class RationalMatrix:
    """Sparse rows: ``rows[i]`` maps column index to a nonzero Fraction."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Iterable[Mapping[int, object]] | None = None):
        self.nrows, self.ncols = nrows, ncols
        clean = []
        for row in rows or [{} for _ in range(nrows)]:
            r = {}
            for c, v in row.items():
                if not 0 <= c < ncols:
                    raise IndexError(f"column {c} out of range")
                v = Fraction(v)
                if v:
                    r[c] = v
            clean.append(r)
        if len(clean) != nrows:
            raise ValueError("row count mismatch")
        self.rows = clean

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> RationalMatrix:
        ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged matrix")
        return cls(len(data), ncols, [{j: v for j, v in enumerate(row) if v} for row in data])

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, object]]) -> RationalMatrix:
        rows: list[dict] = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                rows[i][j] = v
        return cls(nrows, len(columns), rows)

    @classmethod
    def identity(cls, size: int) -> RationalMatrix:
        return cls(size, size, [{i: 1} for i in range(size)])

    def transpose(self) -> RationalMatrix:
        cols: list[dict] = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                cols[j][i] = v
        return RationalMatrix(self.ncols, self.nrows, cols)

    def apply(self, vec: Vector) -> list[Fraction]:
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        return [sum((v * vec[j] for j, v in row.items()), Fraction(0)) for row in self.rows]

    def to_dense(self) -> list[list[Fraction]]:
        return [[row.get(j, Fraction(0)) for j in range(self.ncols)] for row in self.rows]


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = reduce(gcd, row.values(), 0)
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _integer_row(row: Mapping[int, object]) -> dict[int, int]:
    fr = {c: Fraction(v) for c, v in row.items() if v}
    if not fr:
        return {}
    den = reduce(lcm, (v.denominator for v in fr.values()), 1)
    return _primitive({c: int(v * den) for c, v in fr.items()})


def echelon(rows: Sequence[Mapping[int, object]], ncols: int, reduced: bool = True):
    """Fraction-free echelon form.

    Returns ``(pivots, basis)`` with ``basis[t]`` an integer row whose
    leading column is ``pivots[t]``; with ``reduced`` every pivot column is
    zero outside its own row.
    """
    work = [_integer_row(r) for r in rows]
    work = [r for r in work if r]
    pivots: list[int] = []
    basis: list[dict[int, int]] = []
    for col in range(ncols):
        pr = next((i for i, r in enumerate(work) if col in r), None)
        if pr is None:
            continue
        prow = work.pop(pr)
        p = prow[col]
        nxt = []
        for r in work:
            a = r.get(col)
            if a:
                r = _eliminate(r, prow, p, a, col)
            if r:
                nxt.append(r)
        work = nxt
        if reduced:
            for t, b in enumerate(basis):
                a = b.get(col)
                if a:
                    basis[t] = _eliminate(b, prow, p, a, col)
        pivots.append(col)
        basis.append(prow)
        if not work:
            break
    return pivots, basis


def _eliminate(row, prow, p, a, col):
    out = {c: v * p for c, v in row.items()}
    for c, v in prow.items():
        nv = out.get(c, 0) - a * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    out.pop(col, None)
    return _primitive(out) if out else out


def rank(m: RationalMatrix) -> int:
    # eliminate along the shorter side
    if m.nrows > m.ncols:
        m = m.transpose()
    return len(echelon(m.rows, m.ncols, reduced=False)[0])


def kernel_basis(m: RationalMatrix) -> list[list[Fraction]]:
    """Right kernel; one vector per free column with that coordinate equal to 1."""
    pivots, basis = echelon(m.rows, m.ncols, reduced=True)
    pivot_set = set(pivots)
    out = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * m.ncols
        vec[free] = Fraction(1)
        for col, row in zip(pivots, basis):
            a = row.get(free)
            if a:
                vec[col] = Fraction(-a, row[col])
        out.append(vec)
    return out


def in_span(v: Vector, basis: Sequence[Vector]) -> bool:
    dim = len(v)
    if any(len(b) != dim for b in basis):
        raise ValueError("dimension mismatch")
    target = {j: x for j, x in enumerate(v) if x}
    if not target:
        return True
    span = SpanTracker(dim)
    for b in basis:
        span.add({j: x for j, x in enumerate(b) if x})
    return span.contains(target)


class SpanTracker:
    """Incrementally maintained reduced basis of a subspace of Q^dim (sparse vectors)."""

    def __init__(self, dim: int):
        self.dim = dim
        self._pivot_rows: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivot_rows)

    def _reduce(self, vec: Mapping[int, object]) -> dict[int, int]:
        row = _integer_row(vec)
        while row:
            lead = min(row)
            prow = self._pivot_rows.get(lead)
            if prow is None:
                return row
            row = _eliminate(row, prow, prow[lead], row[lead], lead)
        return row

    def add(self, vec: Mapping[int, object]) -> bool:
        """Insert ``vec``; True when it enlarged the span."""
        row = self._reduce(vec)
        if not row:
            return False
        self._pivot_rows[min(row)] = row
        return True

    def contains(self, vec: Mapping[int, object]) -> bool:
        return not self._reduce(vec)

    def basis(self) -> list[list[Fraction]]:
        return [
            [Fraction(row.get(j, 0)) for j in range(self.dim)]
            for _, row in sorted(self._pivot_rows.items())
        ]
