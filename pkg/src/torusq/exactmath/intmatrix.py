from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class IntMatrix:
    """Immutable dense matrix of Python integers (row-major)."""

    __slots__ = ("_rows", "_shape", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("column count mismatch")
        else:
            width = 0 if cols is None else cols
        self._rows = data
        self._shape = (len(data), width)
        self._hash = None

    # construction -------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(([1 if i == j else 0 for j in range(n)] for i in range(n)), cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(([0] * cols for _ in range(rows)), cols=cols)

    @classmethod
    def diag(cls, entries: Sequence[int]) -> IntMatrix:
        n = len(entries)
        return cls(([entries[i] if i == j else 0 for j in range(n)] for i in range(n)), cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
        return cls(([c[i] for c in columns] for i in range(nrows)), cols=len(columns))

    @classmethod
    def block_diag(cls, *blocks: IntMatrix) -> IntMatrix:
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[0] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls(out, cols=m)

    def kron(self, other: IntMatrix) -> IntMatrix:
        p, q = other.shape
        out = [[0] * (self.cols * q) for _ in range(self.rows * p)]
        for i in range(self.rows):
            for j in range(self.cols):
                a = self[i, j]
                if a:
                    for k in range(p):
                        for l in range(q):
                            out[i * p + k][j * q + l] = a * other[k, l]
        return IntMatrix(out, cols=self.cols * q)

    # access -------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def rows(self) -> int:
        return self._shape[0]

    @property
    def cols(self) -> int:
        return self._shape[1]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def __iter__(self):
        return iter(self._rows)

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(zip(*self._rows), cols=self.rows) if self.rows else IntMatrix.zeros(self.cols, 0)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_identity(self) -> bool:
        return self.is_square() and all(
            self._rows[i][j] == (1 if i == j else 0) for i in range(self.rows) for j in range(self.cols)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    # arithmetic ---------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self._shape == other._shape and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._shape, self._rows))
        return self._hash

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(([a + b for a, b in zip(r, s)] for r, s in zip(self, other)), cols=self.cols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(([a - b for a, b in zip(r, s)] for r, s in zip(self, other)), cols=self.cols)

    def __neg__(self) -> IntMatrix:
        return IntMatrix(([-a for a in r] for r in self), cols=self.cols)

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(([k * a for a in r] for r in self), cols=self.cols)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            ocols = other.columns()
            return IntMatrix(
                ([sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self._rows), cols=other.cols
            )
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return [sum(a * b for a, b in zip(r, vec)) for r in self._rows]

    def __pow__(self, k: int) -> IntMatrix:
        if k < 0:
            raise ValueError("use unimodular_inverse for negative powers")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return IntMatrix((r + s for r, s in zip(self, other)), cols=self.cols + other.cols)

    def vstack(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return IntMatrix(self._rows + other._rows, cols=self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix(([self._rows[i][j] for j in cols] for i in rows), cols=len(cols))

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination."""
        if not self.is_square():
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.tolist()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def to_fractions(self) -> list[list[Fraction]]:
        return [[Fraction(x) for x in r] for r in self._rows]

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"
