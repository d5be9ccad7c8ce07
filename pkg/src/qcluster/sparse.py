"""Exact sparse integer matrices indexed by arbitrary hashable labels."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable

from .errors import SingularBlock

__all__ = ["IndexedMatrix", "invert_unimodular"]


class IndexedMatrix:
    """Dict-of-dicts integer matrix; absent entries are zero."""

    __slots__ = ("_rows",)

    def __init__(self, entries=None):
        self._rows: dict[Hashable, dict[Hashable, int]] = {}
        if entries:
            for (r, c), v in entries.items():
                self[r, c] = v

    @classmethod
    def from_rows(cls, rows: dict) -> "IndexedMatrix":
        m = cls()
        for r, row in rows.items():
            for c, v in row.items():
                if v:
                    m._rows.setdefault(r, {})[c] = int(v)
        return m

    @classmethod
    def identity(cls, labels: Iterable) -> "IndexedMatrix":
        return cls.from_rows({v: {v: 1} for v in labels})

    @classmethod
    def from_dense(cls, rows, row_labels, col_labels=None) -> "IndexedMatrix":
        col_labels = row_labels if col_labels is None else col_labels
        return cls.from_rows(
            {r: dict(zip(col_labels, row)) for r, row in zip(row_labels, rows)}
        )

    def __getitem__(self, key) -> int:
        r, c = key
        return self._rows.get(r, {}).get(c, 0)

    def __setitem__(self, key, value: int) -> None:
        r, c = key
        if value:
            self._rows.setdefault(r, {})[c] = int(value)
        else:
            row = self._rows.get(r)
            if row is not None:
                row.pop(c, None)
                if not row:
                    del self._rows[r]

    def row(self, r) -> dict:
        return self._rows.get(r, {})

    def items(self):
        for r, row in self._rows.items():
            for c, v in row.items():
                yield (r, c), v

    def copy(self) -> "IndexedMatrix":
        return IndexedMatrix.from_rows(self._rows)

    def transpose(self) -> "IndexedMatrix":
        m = IndexedMatrix()
        for (r, c), v in self.items():
            m._rows.setdefault(c, {})[r] = v
        return m

    @property
    def T(self) -> "IndexedMatrix":
        return self.transpose()

    def __neg__(self) -> "IndexedMatrix":
        return IndexedMatrix.from_rows({r: {c: -v for c, v in row.items()} for r, row in self._rows.items()})

    def __add__(self, other: "IndexedMatrix") -> "IndexedMatrix":
        m = self.copy()
        for key, v in other.items():
            m[key] = m[key] + v
        return m

    def __sub__(self, other: "IndexedMatrix") -> "IndexedMatrix":
        return self + (-other)

    def __mul__(self, k: int) -> "IndexedMatrix":
        return IndexedMatrix.from_rows({r: {c: k * v for c, v in row.items()} for r, row in self._rows.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "IndexedMatrix") -> "IndexedMatrix":
        out: dict = {}
        for r, row in self._rows.items():
            acc: dict = {}
            for k, a in row.items():
                for c, b in other.row(k).items():
                    acc[c] = acc.get(c, 0) + a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        m = IndexedMatrix()
        m._rows = out
        return m

    def restrict(self, rows, cols=None) -> "IndexedMatrix":
        rows = set(rows)
        cols = rows if cols is None else set(cols)
        m = IndexedMatrix()
        for r in rows:
            sub = {c: v for c, v in self.row(r).items() if c in cols}
            if sub:
                m._rows[r] = sub
        return m

    def relabel(self, fn) -> "IndexedMatrix":
        return IndexedMatrix.from_rows(
            {fn(r): {fn(c): v for c, v in row.items()} for r, row in self._rows.items()}
        )

    def is_skew(self) -> bool:
        return all(self[c, r] == -v for (r, c), v in self.items())

    def nnz(self) -> int:
        return sum(len(row) for row in self._rows.values())

    def to_dense(self, row_labels, col_labels=None) -> list[list[int]]:
        col_labels = row_labels if col_labels is None else col_labels
        return [[self[r, c] for c in col_labels] for r in row_labels]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IndexedMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __repr__(self) -> str:
        return f"IndexedMatrix(nnz={self.nnz()})"


def invert_unimodular(rows: list[list[int]]) -> list[list[int]]:
    """Exact inverse of a square integer matrix with integer inverse."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularBlock("block is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = [row[n:] for row in aug]
    if any(x.denominator != 1 for row in inv for x in row):
        raise SingularBlock("block inverse is not integral")
    return [[int(x) for x in row] for row in inv]
