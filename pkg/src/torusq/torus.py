"""Finite groups of affine automorphisms of a complex torus ``A = C^n / Λ``.

Group elements act on coordinates in a fixed Z-basis of Λ: ``x ↦ h x + t``
with ``h`` an integer matrix and ``t`` rational modulo 1.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import (
    GroupTooLarge,
    InvalidComplexStructure,
    NoSolution,
    NotFiniteOrder,
    OddRank,
    RankDeficientPeriod,
)
from .exactmath import (
    CycloElem,
    FiniteAbelianGroup,
    IntMatrix,
    char_poly_cyclotomic_factor,
    hermite_normal_form,
    integer_rank,
    lcm,
    member_mod_lattice,
    saturate,
    smith_normal_form,
    unimodular_inverse,
)
from .exactmath import linalg
from .exactmath.polys import prime_power

DEFAULT_CAP = 10_000


def default_cap() -> int:
    env = os.environ.get("TORUSQ_CAP")
    return int(env) if env else DEFAULT_CAP


def mod1(x) -> Fraction:
    x = Fraction(x)
    return Fraction(x.numerator % x.denominator, x.denominator)


# -- elements -------------------------------------------------------------

@dataclass(frozen=True)
class AffineAut:
    linear: IntMatrix
    translation: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.linear.is_square():
            raise ValueError("linear part must be square")
        t = tuple(mod1(x) for x in self.translation)
        if len(t) != self.linear.rows:
            raise ValueError("translation length must match the lattice rank")
        object.__setattr__(self, "translation", t)

    @classmethod
    def linear_only(cls, h: IntMatrix) -> AffineAut:
        return cls(h, (Fraction(0),) * h.rows)

    @classmethod
    def identity(cls, rank: int) -> AffineAut:
        return cls.linear_only(IntMatrix.identity(rank))

    @property
    def rank(self) -> int:
        return self.linear.rows

    def __mul__(self, other: AffineAut) -> AffineAut:
        # (h1, t1) ∘ (h2, t2) = (h1 h2, h1 t2 + t1)
        ht = self.linear @ other.translation
        return AffineAut(self.linear @ other.linear, tuple(a + b for a, b in zip(ht, self.translation)))

    def __call__(self, x: Sequence) -> tuple[Fraction, ...]:
        return tuple(mod1(a + b) for a, b in zip(self.linear @ list(x), self.translation))

    def inverse(self) -> AffineAut:
        hinv = unimodular_inverse(self.linear)
        return AffineAut(hinv, tuple(-c for c in hinv @ self.translation))

    def __pow__(self, k: int) -> AffineAut:
        if k < 0:
            return self.inverse() ** (-k)
        out = AffineAut.identity(self.rank)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return self.linear.is_identity() and not any(self.translation)

    def is_translation(self) -> bool:
        return self.linear.is_identity()

    def linear_order(self) -> int:
        """Order of the linear part; raises ``NotFiniteOrder``."""
        factors = char_poly_cyclotomic_factor(self.linear)
        n = lcm(*factors) if factors else 1
        if not (self.linear**n).is_identity():
            raise NotFiniteOrder("linear part is not diagonalisable of finite order")
        return n

    def order(self) -> int:
        n = self.linear_order()
        s = self**n
        den = lcm(*(x.denominator for x in s.translation))
        return n * den

    def shift_matrix(self) -> IntMatrix:
        return self.linear - IntMatrix.identity(self.rank)


# -- sublattices ------------------------------------------------------------

@dataclass(frozen=True)
class SublatticeBasis:
    """Saturated sublattice of Z^k; columns of ``basis`` form a canonical basis."""

    ambient_rank: int
    basis: IntMatrix
    rank: int

    @classmethod
    def from_generators(cls, gens: IntMatrix) -> SublatticeBasis:
        b = saturate(gens)
        return cls(gens.rows, b, b.cols)

    def contains_span_of(self, vectors: IntMatrix) -> bool:
        """Whether the columns of ``vectors`` lie in the Q-span of this lattice."""
        if vectors.cols == 0:
            return True
        if self.rank == 0:
            return vectors.is_zero()
        return integer_rank(self.basis.hstack(vectors)) == self.rank

    def is_invariant_under(self, h: IntMatrix) -> bool:
        return self.rank == 0 or self.contains_span_of(h @ self.basis)


# -- actions -----------------------------------------------------------------

def _normalise_period(period) -> tuple[tuple[CycloElem, ...], ...] | None:
    if period is None:
        return None
    rows = [list(r) for r in period]
    m = lcm(*(x.conductor for r in rows for x in r if isinstance(x, CycloElem)))
    return tuple(tuple(CycloElem.coerce(x, m) for x in r) for r in rows)


def period_conductor(period) -> int:
    return period[0][0].conductor


def check_period(period, n: int) -> None:
    """The 2n period columns must be R-linearly independent in C^n."""
    if len(period) != n or any(len(r) != 2 * n for r in period):
        raise RankDeficientPeriod(f"period must be {n} x {2 * n}")
    realified = [list(r) for r in period] + [[x.conjugate() for x in r] for r in period]
    if linalg.rank(realified) != 2 * n:
        raise RankDeficientPeriod("period columns are not R-linearly independent")


def period_intertwiner(period, h: IntMatrix) -> list[list[CycloElem]]:
    """The unique n x n matrix ρ with ``ρ P = P h``; raises ``NoSolution``."""
    n = len(period)
    P = [list(r) for r in period]
    Ph = [[sum((P[i][k] * h[k, j] for k in range(h.rows) if h[k, j]), 0 * P[i][0]) for j in range(h.cols)]
          for i in range(n)]
    cols = linalg.independent_columns(P)
    if len(cols) < n:
        raise RankDeficientPeriod("period has rank < n over the cyclotomic field")
    cols = cols[:n]
    PJ = [[P[i][j] for j in cols] for i in range(n)]
    PhJ = [[Ph[i][j] for j in cols] for i in range(n)]
    rho = linalg.matmul(PhJ, linalg.inverse(PJ))
    check = linalg.matmul(rho, P)
    if any(check[i][j] != Ph[i][j] for i in range(n) for j in range(2 * n)):
        raise NoSolution("linear part is not holomorphic for the given period")
    return rho


@dataclass
class TorusAction:
    half_dim: int
    generators: list[AffineAut]
    period: tuple[tuple[CycloElem, ...], ...] | None = None
    name: str = ""

    def __post_init__(self):
        self.generators = list(self.generators)
        self.period = _normalise_period(self.period)

    @property
    def rank(self) -> int:
        return 2 * self.half_dim

    @property
    def tier(self) -> str:
        return "analytic" if self.period is not None else "lattice"


def complex_structure_parity(h: IntMatrix) -> bool:
    """Necessary condition: Φ_1 and Φ_2 occur with even multiplicity."""
    f = char_poly_cyclotomic_factor(h)
    return f.get(1, 0) % 2 == 0 and f.get(2, 0) % 2 == 0


# -- group tables --------------------------------------------------------------

@dataclass
class GroupTable:
    elements: list[AffineAut]
    half_dim: int
    period: tuple[tuple[CycloElem, ...], ...] | None = None
    name: str = ""
    index: dict[AffineAut, int] = field(default_factory=dict, repr=False)
    _mul: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.index = {g: i for i, g in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements in group table")

    def __len__(self):
        return len(self.elements)

    @property
    def rank(self) -> int:
        return 2 * self.half_dim

    @cached_property
    def identity(self) -> int:
        return self.index[AffineAut.identity(self.rank)]

    @cached_property
    def orders(self) -> list[int]:
        return [g.order() for g in self.elements]

    @cached_property
    def exponent(self) -> int:
        return lcm(*self.orders)

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        if key not in self._mul:
            prod = self.elements[i] * self.elements[j]
            if prod not in self.index:
                raise ValueError("group table is not closed under composition")
            self._mul[key] = self.index[prod]
        return self._mul[key]

    def inverse(self, i: int) -> int:
        return self.index[self.elements[i].inverse()]

    def subgroup(self, generators) -> frozenset[int]:
        """Indices of the subgroup generated by the given element indices."""
        gens = [g for g in generators if g != self.identity]
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(g, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def sub_table(self, indices) -> GroupTable:
        idx = sorted(indices, key=lambda i: (i != self.identity, i))
        return GroupTable([self.elements[i] for i in idx], self.half_dim, self.period, self.name)


def enumerate_group(action: TorusAction, cap: int | None = None) -> GroupTable:
    """Close the generators under composition (breadth first, at most ``cap`` elements)."""
    cap = default_cap() if cap is None else cap
    rank = action.rank
    for k, g in enumerate(action.generators):
        if g.rank != rank:
            raise InvalidComplexStructure(f"generator {k} has rank {g.rank}, expected {rank}")
        g.linear_order()
    ident = AffineAut.identity(rank)
    seen = {ident: 0}
    elements = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in action.generators:
            y = g * x
            if y not in seen:
                if len(elements) >= cap:
                    raise GroupTooLarge(f"group closure exceeds cap {cap}")
                seen[y] = len(elements)
                elements.append(y)
                queue.append(y)
    for k, g in enumerate(elements):
        if not complex_structure_parity(g.linear):
            raise InvalidComplexStructure(f"element {k}: eigenvalue ±1 with odd multiplicity")
    if action.period is not None:
        try:
            check_period(action.period, action.half_dim)
            for g in action.generators:
                period_intertwiner(action.period, g.linear)
        except (NoSolution, RankDeficientPeriod) as exc:
            raise InvalidComplexStructure(f"period inconsistent with the action: {exc}") from exc
    return GroupTable(elements, action.half_dim, action.period, action.name)


def normalize_translations(table: GroupTable) -> tuple[GroupTable, IntMatrix]:
    """Quotient out pure translations by enlarging Λ to Λ' = Λ + Σ Z t.

    Returns the new table (coordinates in a basis of Λ') and the integer matrix
    ``K`` converting old coordinates to new ones (``v_new = K v_old``).
    """
    rank = table.rank
    shifts = [g.translation for g in table.elements if g.is_translation() and any(g.translation)]
    if not shifts:
        return table, IntMatrix.identity(rank)
    den = lcm(*(x.denominator for t in shifts for x in t))
    gens = [[den * int(i == j) for j in range(rank)] for i in range(rank)]
    gens += [[int(x * den) for x in t] for t in shifts]
    H, _ = hermite_normal_form(IntMatrix(gens, cols=rank))
    B = IntMatrix([H.row(i) for i in range(rank)], cols=rank).T  # columns: den * (basis of Λ')
    binv = linalg.inverse(B.to_fractions())
    K = IntMatrix(([int(den * x) for x in r] for r in binv), cols=rank)
    Kinv = [[x / den for x in r] for r in B.to_fractions()]
    new_elements = []
    seen = set()
    for g in table.elements:
        h = linalg.matmul(linalg.matmul(K.to_fractions(), g.linear.to_fractions()), Kinv)
        if any(x.denominator != 1 for r in h for x in r):
            raise InvalidComplexStructure("translation subgroup is not normalised by the group")
        e = AffineAut(IntMatrix(([int(x) for x in r] for r in h), cols=rank), tuple(K @ g.translation))
        if e not in seen:
            seen.add(e)
            new_elements.append(e)
    ident = AffineAut.identity(rank)
    new_elements.sort(key=lambda e: e != ident)
    period = None
    if table.period is not None:
        P = [list(r) for r in table.period]
        period = tuple(tuple(sum((P[i][k] * Kinv[k][j] for k in range(rank) if Kinv[k][j]), 0 * P[i][0])
                             for j in range(rank)) for i in range(len(P)))
    return GroupTable(new_elements, table.half_dim, period, table.name), K


# -- fixpoints -----------------------------------------------------------------

@dataclass(frozen=True)
class FixLocusInfo:
    nonempty: bool
    dim: int | None = None
    isolated_count: int | None = None
    torsion: FiniteAbelianGroup | None = None


def has_fixpoint(el: AffineAut) -> bool:
    """Whether ``h x + t ≡ x`` has a solution on the torus."""
    return member_mod_lattice(el.translation, el.shift_matrix())


def fix_locus(el: AffineAut) -> FixLocusInfo:
    if not has_fixpoint(el):
        return FixLocusInfo(nonempty=False)
    snf = smith_normal_form(el.shift_matrix())
    n = el.rank // 2
    dim = n - snf.rank // 2
    count = snf.factors.order if snf.rank == el.rank else None
    return FixLocusInfo(True, dim, count, snf.factors)


def subtorus_image(el: AffineAut) -> SublatticeBasis:
    """Lattice of the subtorus ``C_g = Im(g - 1)``: saturation of ``(h - 1) Λ``."""
    sub = SublatticeBasis.from_generators(el.shift_matrix())
    if sub.rank % 2:
        raise OddRank(f"Im(h - 1) has odd rank {sub.rank}")
    return sub


# -- classification --------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    E: frozenset[int]
    F: frozenset[int]
    Fprime: frozenset[int]
    Fstar: frozenset[int]
    quotient_order: int
    fstar_generates_fprime: bool
    generated_by_E: bool
    generated_by_F: bool

    @property
    def etale(self) -> bool:
        return len(self.Fprime) == 1


def is_prime_power(n: int) -> bool:
    return prime_power(n) is not None


def classify(table: GroupTable) -> Classification:
    fix = [has_fixpoint(g) for g in table.elements]
    F = frozenset(i for i, f in enumerate(fix) if f)
    E = frozenset(range(len(table))) - F
    Fprime = table.subgroup(F)
    Fstar = frozenset(i for i in F if is_prime_power(table.orders[i]))
    everything = frozenset(range(len(table)))
    return Classification(
        E=E,
        F=F,
        Fprime=Fprime,
        Fstar=Fstar,
        quotient_order=len(table) // len(Fprime),
        fstar_generates_fprime=table.subgroup(Fstar) == Fprime,
        generated_by_E=table.subgroup(E) == everything,
        generated_by_F=Fprime == everything,
    )


def torsion_level(table: GroupTable, k: int) -> int:
    """Smallest multiple of ``k`` whose torsion points are permuted by the group."""
    return lcm(k, *(x.denominator for g in table.elements for x in g.translation))


def verify_quotient_free(table: GroupTable, k: int, classification: Classification | None = None,
                         use_numba: bool | None = None) -> bool:
    """Check that G/F' acts without fixpoints on the F'-orbits of torsion points.

    The G-set is ``(1/K)Λ/Λ`` with ``K = torsion_level(table, k)``.
    """
    if k < 1:
        raise ValueError("torsion level must be positive")
    cl = classification or classify(table)
    if len(cl.Fprime) == len(table):
        return True
    level = torsion_level(table, k)
    H = np.array([g.linear.tolist() for g in table.elements], dtype=np.int64)
    T = np.array([[int(x * level) for x in g.translation] for g in table.elements], dtype=np.int64)
    images = _kernels.torsion_images(H, T, level, use_numba=use_numba)
    labels = _kernels.orbit_labels(images, sorted(cl.Fprime), use_numba=use_numba)
    outside = [i for i in range(len(table)) if i not in cl.Fprime]
    return not _kernels.has_fixed_class(images, labels, outside, use_numba=use_numba)
