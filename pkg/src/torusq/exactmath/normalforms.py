"""Hermite and Smith normal forms with saturation and lattice membership tests."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

from .intmatrix import IntMatrix
from .linalg import inverse


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/d_1 x ... x Z/d_k with d_i >= 2 and d_i | d_{i+1}."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        f = tuple(int(d) for d in self.invariant_factors)
        if any(d < 2 for d in f):
            raise ValueError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(f, f[1:])):
            raise ValueError("invariant factors must form a divisibility chain")
        object.__setattr__(self, "invariant_factors", f)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1


@dataclass(frozen=True)
class SmithForm:
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    factors: FiniteAbelianGroup
    rank: int

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.shape))]


def _row_op(a, i, k, q):
    # row_i -= q * row_k
    ri, rk = a[i], a[k]
    for j in range(len(ri)):
        ri[j] -= q * rk[j]


def hermite_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style HNF: returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)`` and zero rows
    are moved to the bottom.
    """
    m, n = M.shape
    a = M.tolist()
    u = IntMatrix.identity(m).tolist()
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            u[r], u[p] = u[p], u[r]
            clean = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    _row_op(a, i, r, q)
                    _row_op(u, i, r, q)
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                _row_op(a, i, r, q)
                _row_op(u, i, r, q)
        r += 1
    return IntMatrix(a, cols=n), IntMatrix(u, cols=m)


def smith_normal_form(M: IntMatrix) -> SmithForm:
    """Return ``U, V`` unimodular with ``U @ M @ V == D`` diagonal, ``d_i | d_{i+1}``."""
    m, n = M.shape
    a = M.tolist()
    u = IntMatrix.identity(m).tolist()
    v = IntMatrix.identity(n).tolist()

    def swap_cols(x, i, j):
        for row in x:
            row[i], row[j] = row[j], row[i]

    def col_op(x, j, k, q):
        # col_j -= q * col_k
        for row in x:
            row[j] -= q * row[k]

    t = 0
    while t < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        u[t], u[pi] = u[pi], u[t]
        swap_cols(a, t, pj)
        swap_cols(v, t, pj)
        while True:
            moved = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    _row_op(a, i, t, q)
                    _row_op(u, i, t, q)
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        u[t], u[i] = u[i], u[t]
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(a, j, t, q)
                    col_op(v, j, t, q)
                    if a[t][j]:
                        swap_cols(a, t, j)
                        swap_cols(v, t, j)
                        moved = True
                        break
            if moved:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t]), None
            )
            if bad is None:
                break
            # row_t += row_bad brings a non-divisible entry into row t
            _row_op(a, t, bad, -1)
            _row_op(u, t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    D = IntMatrix(a, cols=n)
    diag = [a[i][i] for i in range(min(m, n))]
    rank = sum(1 for d in diag if d)
    return SmithForm(
        D=D,
        U=IntMatrix(u, cols=m),
        V=IntMatrix(v, cols=n),
        factors=FiniteAbelianGroup(tuple(d for d in diag if d > 1)),
        rank=rank,
    )


def unimodular_inverse(W: IntMatrix) -> IntMatrix:
    inv = inverse(W.to_fractions())
    if any(x.denominator != 1 for r in inv for x in r):
        raise ValueError("matrix is not unimodular")
    return IntMatrix(([int(x) for x in r] for r in inv), cols=W.rows)


def integer_rank(M: IntMatrix) -> int:
    return smith_normal_form(M).rank


def saturation_with_complement(B: IntMatrix) -> tuple[IntMatrix, int]:
    """Unimodular ``W`` (columns a basis of Z^k) whose first ``r`` columns span
    the saturation of the column lattice of ``B``; also returns ``r``.

    The first ``r`` columns are in canonical form (their transpose is a row HNF).
    """
    k = B.rows
    if B.cols == 0 or B.is_zero():
        return IntMatrix.identity(k), 0
    snf = smith_normal_form(B.T)
    r = snf.rank
    vinv = unimodular_inverse(snf.V)  # rows: basis of Z^k, first r span Q-rowspace of B^T
    top = vinv.submatrix(range(r), range(k))
    h, _ = hermite_normal_form(top)
    rows = [h.row(i) for i in range(r)] + [vinv.row(i) for i in range(r, k)]
    return IntMatrix(rows, cols=k).T, r


def saturate(B: IntMatrix) -> IntMatrix:
    """Basis (as columns, transpose in row HNF) of ``span_Q(cols B) ∩ Z^k``."""
    W, r = saturation_with_complement(B)
    return W.submatrix(range(W.rows), range(r))


def kernel_lattice(M: IntMatrix) -> IntMatrix:
    """Columns form a basis of ``{x in Z^n : M x = 0}`` (saturated by construction)."""
    snf = smith_normal_form(M)
    n = M.cols
    return snf.V.submatrix(range(n), range(snf.rank, n))


def member_mod_lattice(t: Sequence[Fraction], M: IntMatrix) -> bool:
    """True iff ``M x + lam = t`` has a solution with ``x`` rational, ``lam`` integral."""
    t = [Fraction(x) for x in t]
    if len(t) != M.rows:
        raise ValueError("length mismatch")
    if M.cols == 0 or M.is_zero():
        return all(x.denominator == 1 for x in t)
    snf = smith_normal_form(M.T)
    # coordinates of t in the basis given by the rows of V^{-1}
    coords = snf.V.T @ t
    return all(Fraction(c).denominator == 1 for c in coords[snf.rank:])
