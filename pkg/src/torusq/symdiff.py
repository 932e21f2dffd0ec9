"""Formal symmetric differentials with Laurent-polynomial coefficients.

A symmetric differential of degree ``m`` in ``n`` variables is stored as a map
from multi-indices ``(m_1, ..., m_n)`` (the monomial ``dy_1^m_1 ... dy_n^m_n``
of the symmetric algebra) to a coefficient polynomial, itself a map from signed
exponent vectors to exact scalars.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import UnsupportedOrder, WeightsNotNormalized
from .exactmath import linalg
from .exactmath.polys import prime_power

Exponent = tuple[int, ...]
Poly = dict[Exponent, object]


# -- coefficient polynomials ------------------------------------------------

def poly_add_into(acc: Poly, p: Mapping[Exponent, object], scale=1) -> None:
    for e, c in p.items():
        v = acc.get(e, 0) + c * scale
        if v == 0:
            acc.pop(e, None)
        else:
            acc[e] = v


def poly_mul(p: Mapping[Exponent, object], q: Mapping[Exponent, object]) -> Poly:
    out: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
    return out


def monomial(exps: Sequence[int], coeff=1) -> Poly:
    return {tuple(exps): coeff} if coeff != 0 else {}


def variable(n_vars: int, i: int) -> Poly:
    return monomial([int(j == i) for j in range(n_vars)])


# -- symmetric tensors ---------------------------------------------------------

@dataclass
class SymTensor:
    n_vars: int
    terms: dict[Exponent, Poly] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {tuple(k): dict(v) for k, v in self.terms.items() if v}
        degs = {sum(k) for k in self.terms}
        if len(degs) > 1:
            raise ValueError("all multi-indices must have the same length")
        if any(len(k) != self.n_vars for k in self.terms):
            raise ValueError("multi-index length must equal n_vars")

    @property
    def degree(self) -> int | None:
        return sum(next(iter(self.terms))) if self.terms else None

    @classmethod
    def zero(cls, n_vars: int) -> SymTensor:
        return cls(n_vars, {})

    @classmethod
    def one(cls, n_vars: int) -> SymTensor:
        return cls(n_vars, {(0,) * n_vars: monomial([0] * n_vars)})

    @classmethod
    def d(cls, n_vars: int, i: int, coeff: Poly | None = None) -> SymTensor:
        """The 1-form ``coeff * dy_i``."""
        idx = tuple(int(j == i) for j in range(n_vars))
        return cls(n_vars, {idx: coeff if coeff is not None else monomial([0] * n_vars)})

    @classmethod
    def from_ordered(cls, n_vars: int, items: Iterable[tuple[Poly, Sequence[int]]]) -> SymTensor:
        """Symmetrise ``Σ c · dy_{i_1} ⊗ ... ⊗ dy_{i_m}`` given as (c, (i_1, ..., i_m)) pairs."""
        out = cls.zero(n_vars)
        for coeff, order in items:
            idx = [0] * n_vars
            for i in order:
                idx[i] += 1
            out = out + cls(n_vars, {tuple(idx): dict(coeff)})
        return out

    def __add__(self, other: SymTensor) -> SymTensor:
        terms = {k: dict(v) for k, v in self.terms.items()}
        for k, v in other.terms.items():
            acc = terms.setdefault(k, {})
            poly_add_into(acc, v)
            if not acc:
                del terms[k]
        return SymTensor(self.n_vars, terms)

    def scale(self, c) -> SymTensor:
        return SymTensor(self.n_vars, {k: {e: x * c for e, x in v.items()} for k, v in self.terms.items()})

    def __mul__(self, other: SymTensor) -> SymTensor:
        """Symmetric product."""
        terms: dict[Exponent, Poly] = {}
        for k1, p1 in self.terms.items():
            for k2, p2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                acc = terms.setdefault(k, {})
                poly_add_into(acc, poly_mul(p1, p2))
                if not acc:
                    del terms[k]
        return SymTensor(self.n_vars, terms)

    def __pow__(self, k: int) -> SymTensor:
        out = SymTensor.one(self.n_vars)
        for _ in range(k):
            out = out * self
        return out

    def coefficient(self, idx: Sequence[int]) -> Poly:
        return dict(self.terms.get(tuple(idx), {}))

    def __eq__(self, other):
        return isinstance(other, SymTensor) and self.n_vars == other.n_vars and self.terms == other.terms


# -- substitutions -----------------------------------------------------------

@dataclass(frozen=True)
class MonomialSubstitution:
    """``y_i ↦ c_i · x^{e_i}`` for old variables ``y`` in terms of new variables ``x``."""

    n_new: int
    rules: tuple[tuple[object, Exponent], ...]

    @classmethod
    def from_rules(cls, n_new: int, rules: Sequence[tuple[object, Sequence[int]]]) -> MonomialSubstitution:
        return cls(n_new, tuple((c, tuple(e)) for c, e in rules))

    @property
    def n_old(self) -> int:
        return len(self.rules)

    def function(self, p: Mapping[Exponent, object]) -> Poly:
        """Substitute into a coefficient polynomial (negative powers allowed)."""
        out: Poly = {}
        for e, c in p.items():
            coeff = c
            exp = [0] * self.n_new
            for k, (ci, ei) in zip(e, self.rules):
                if k:
                    coeff = coeff * (Fraction(ci) ** k if not hasattr(ci, "conductor") else ci**k)
                    for j, x in enumerate(ei):
                        exp[j] += k * x
            poly_add_into(out, {tuple(exp): coeff})
        return out

    def differential(self, i: int) -> SymTensor:
        """Exact total differential of the i-th rule."""
        c, e = self.rules[i]
        out = SymTensor.zero(self.n_new)
        for j, x in enumerate(e):
            if x:
                exp = list(e)
                exp[j] -= 1
                out = out + SymTensor.d(self.n_new, j, monomial(exp, c * x))
        return out


def pullback(w: SymTensor, s: MonomialSubstitution) -> SymTensor:
    if w.n_vars != s.n_old:
        raise ValueError("substitution does not match the number of variables")
    dys = [s.differential(i) for i in range(s.n_old)]
    out = SymTensor.zero(s.n_new)
    for idx, coeff in w.terms.items():
        term = SymTensor(s.n_new, {(0,) * s.n_new: s.function(coeff)})
        for i, k in enumerate(idx):
            if k:
                term = term * dys[i] ** k
        out = out + term
    return out


# -- descent through a weighted blow-up chart ------------------------------------

def multi_indices(n: int, m: int):
    """All ``(m_1, ..., m_n)`` of nonnegative integers with sum ``m``."""
    if n == 0:
        if m == 0:
            yield ()
        return
    for combo in combinations_with_replacement(range(n), m):
        idx = [0] * n
        for i in combo:
            idx[i] += 1
        yield tuple(idx)


def s_exponent(N: int, weights: Sequence[int], idx: Sequence[int]) -> int:
    """``(N-1) m - m - Σ (a_i - 1) m_i``."""
    m = sum(idx)
    return (N - 1) * m - m - sum((a - 1) * k for a, k in zip(weights, idx))


def check_normalized(N: int, weights: Sequence[int]) -> None:
    if prime_power(N) is None:
        raise WeightsNotNormalized(f"order {N} is not a prime power")
    if not weights or weights[0] != 1:
        raise WeightsNotNormalized("the first weight must be 1")
    if any(not 0 < a < N for a in weights):
        raise WeightsNotNormalized(f"weights must lie strictly between 0 and {N}")


@dataclass(frozen=True)
class CyclicDescent:
    dimension: int
    closed_form_dimension: int
    basis: tuple[dict, ...]
    invariant_count: int

    @property
    def agree(self) -> bool:
        return self.dimension == self.closed_form_dimension


def cyclic_descent_dim(N: int, weights: Sequence[int], m: int, r: int = 0) -> CyclicDescent:
    """Invariant constant symmetric m-differentials that extend with pole order ≤ rN.

    The chart is ``y_1 = y_1, y_i = z_i y_1^{a_i}``; the coefficient of
    ``dy_1^m`` of the pullback must equal ``N^m y_1^{(N-1)m - rN} b`` with ``b``
    holomorphic.
    """
    weights = tuple(weights)
    check_normalized(N, weights)
    if m < 0 or r < 0:
        raise ValueError("degree and pole order must be nonnegative")
    n = len(weights)
    chart = MonomialSubstitution.from_rules(
        n, [(1, tuple(int(j == 0) for j in range(n)))]
        + [(1, tuple(a if j == 0 else int(j == i) for j in range(n))) for i, a in enumerate(weights) if i > 0]
    )
    invariant = [idx for idx in multi_indices(n, m) if sum(a * k for a, k in zip(weights, idx)) % N == 0]
    lead = tuple([m] + [0] * (n - 1))
    shift = (N - 1) * m - r * N
    columns = []
    for idx in invariant:
        w = SymTensor(n, {idx: monomial([0] * n)})
        columns.append(pullback(w, chart).coefficient(lead))
    # holomorphy of b: every surviving y_1 exponent minus the shift must be >= 0
    bad = sorted({e for col in columns for e in col if e[0] - shift < 0})
    matrix = [[Fraction(col.get(e, 0)) for col in columns] for e in bad]
    if invariant and matrix:
        null = linalg.nullspace(matrix, len(invariant))
    else:
        null = [[Fraction(int(i == j)) for i in range(len(invariant))] for j in range(len(invariant))]
    basis = tuple({idx: c for idx, c in zip(invariant, vec) if c} for vec in null)
    closed = sum(1 for idx in invariant if m + s_exponent(N, weights, idx) <= r * N)
    return CyclicDescent(len(null), closed, basis, len(invariant))


@dataclass(frozen=True)
class IsotrivialDescent:
    """Monomials ``s^k ds^{m-p} dx^p`` spanning the descending invariant sections."""

    basis: tuple[tuple[int, int], ...]  # (k, p)
    expected: tuple[tuple[int, int], ...]
    degree_bound: int

    @property
    def match(self) -> bool:
        return set(self.basis) == set(self.expected)


def isotrivial_descent_basis(N: int, epsilon: int, m: int, degree_bound: int | None = None) -> IsotrivialDescent:
    """Invariant sections ``Σ c_p(s) ds^{m-p} dx^p`` on ``(U × F)/Z_N`` that descend.

    ``g(s, x) = (ζ s, ζ^ε x)``; chart ``x = s^e z`` with ``e = 1`` for ε = 1 and
    ``e = N - 1`` for ε = -1, then ``t = s^N``.
    """
    if N not in (2, 3):
        raise UnsupportedOrder(f"order {N} is not supported (only 2 and 3)")
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    bound = 2 * N * max(m, 1) if degree_bound is None else degree_bound
    e = 1 if epsilon == 1 else N - 1
    chart = MonomialSubstitution.from_rules(2, [(1, (1, 0)), (1, (e, 1))])  # (s, x) in terms of (s, z)
    unknowns = [(k, p) for p in range(m + 1) for k in range(bound + 1)
                if (k + (m - p) + epsilon * p) % N == 0]
    columns = []
    for k, p in unknowns:
        w = SymTensor(2, {(m - p, p): monomial([k, 0])})
        columns.append(pullback(w, chart))
    rows = set()
    for col in columns:
        for idx, poly in col.terms.items():
            h = idx[1]
            for ex in poly:
                if ex[0] < (N - 1) * (m - h):
                    rows.add((idx, ex))
    rows = sorted(rows)
    matrix = [[Fraction(col.terms.get(idx, {}).get(ex, 0)) for col in columns] for idx, ex in rows]
    if matrix:
        null = linalg.nullspace(matrix, len(unknowns))
    else:
        null = [[Fraction(int(i == j)) for i in range(len(unknowns))] for j in range(len(unknowns))]
    basis = set()
    for vec in null:
        support = [u for u, c in zip(unknowns, vec) if c]
        if len(support) != 1:
            raise AssertionError("descent conditions are expected to be monomial")
        basis.add(support[0])
    e_out = N - 1 if epsilon == 1 else 1
    expected = {(N * j + (N - 1) * (m - p) + e_out * p, p)
                for p in range(m + 1) for j in range(bound + 1)
                if N * j + (N - 1) * (m - p) + e_out * p <= bound}
    return IsotrivialDescent(tuple(sorted(basis)), tuple(sorted(expected)), bound)


# -- dimension bookkeeping for rank-2 bundles ----------------------------------------

def clebsch_gordan_dims(m_max: int) -> list[tuple[int, int]]:
    """``(h^0(Sym^m E), h^0(Sym^m E ⊗ A) / h^0(A))`` for m = 0..m_max.

    ``a_m``: the inequality ``a_{m+1} <= 2 a_m - a_{m-1}`` together with
    ``a_m >= 1`` pins every value. ``b_m``: the tensored sequence is exact on
    global sections, so ``b_{m+1} = 2 b_m - b_{m-1}``.
    """
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    a, b = [1, 1], [1, 2]
    for k in range(1, m_max):
        upper = 2 * a[k] - a[k - 1]
        if upper != 1:
            raise AssertionError("a_m is not pinned by the bounds")
        a.append(upper)
        b.append(2 * b[k] - b[k - 1])
    return list(zip(a, b))[: m_max + 1]


# -- Sym^m of an intersection ----------------------------------------------------------

def _span_basis(vectors: list[list[Fraction]]) -> list[list[Fraction]]:
    if not vectors:
        return []
    R, piv = linalg.rref(vectors)
    return [R[i] for i in range(len(piv))]


def intersect_spans(spans: Sequence[list[list[Fraction]]], dim: int) -> list[list[Fraction]]:
    """Basis of the intersection of the row spans (vectors of length ``dim``)."""
    current = _span_basis([list(v) for v in spans[0]]) if spans else [
        [Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    for other in spans[1:]:
        other = _span_basis([list(v) for v in other])
        if not current or not other:
            return []
        # x in both iff x = Σ u_i c_i = Σ v_j d_j
        a = [[current[i][k] for i in range(len(current))] + [-other[j][k] for j in range(len(other))]
             for k in range(dim)]
        null = linalg.nullspace(a, len(current) + len(other))
        vecs = [[sum((v[i] * current[i][k] for i in range(len(current))), Fraction(0)) for k in range(dim)]
                for v in null]
        current = _span_basis(vecs)
    return current


def _sym_power_span(basis: list[list[Fraction]], m: int, d: int) -> list[list[Fraction]]:
    monos = list(multi_indices(d, m))
    pos = {mo: i for i, mo in enumerate(monos)}
    vectors = []
    for combo in combinations_with_replacement(range(len(basis)), m):
        poly: dict = {(0,) * d: Fraction(1)}
        for i in combo:
            lin = {tuple(int(j == k) for j in range(d)): Fraction(c) for k, c in enumerate(basis[i]) if c}
            poly = poly_mul(poly, lin)
        vec = [Fraction(0)] * len(monos)
        for e, c in poly.items():
            vec[pos[e]] = c
        vectors.append(vec)
    return vectors


def sym_intersection_dim(bases: Sequence[Sequence[Sequence]], m: int, d: int | None = None) -> tuple[int, int]:
    """``(C(dim ∩F_j + m - 1, m), dim ∩ Sym^m F_j)``."""
    if not bases:
        raise ValueError("need at least one subspace")
    d = d if d is not None else len(bases[0][0])
    spans = [[[Fraction(x) for x in v] for v in b] for b in bases]
    cap = len(intersect_spans(spans, d))
    lhs = comb(cap + m - 1, m) if cap else int(m == 0)
    nmono = comb(d + m - 1, m)
    rhs = len(intersect_spans([_sym_power_span(_span_basis(s), m, d) for s in spans], nmono))
    return lhs, rhs


def random_subspaces(rng: random.Random, d: int, count: int, max_entry: int = 2) -> list[list[list[int]]]:
    """Random subspaces of Q^d sharing a random common part, for the intersection check."""
    common = rng.randint(0, d)
    shared = [[rng.randint(-max_entry, max_entry) for _ in range(d)] for _ in range(common)]
    out = []
    for _ in range(count):
        extra = rng.randint(0, d - common)
        out.append(shared + [[rng.randint(-max_entry, max_entry) for _ in range(d)] for _ in range(extra)])
    return [b if b else [[0] * d] for b in out]
