"""Holomorphic tangent representation, quotient singularity types and Reid-Tai ages."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence, Union

from .errors import EigenvalueNotRootOfUnity, NoPeriod, NoSolution, NoUnitWeight
from .exactmath import CycloElem, charpoly, lcm
from .exactmath import linalg
from .exactmath.polys import poly_derivative, poly_eval
from .torus import AffineAut, GroupTable, TorusAction, check_period, has_fixpoint, period_intertwiner

CycloMatrix = list[list[CycloElem]]


def generating_set(table: GroupTable) -> list[int]:
    """A small generating set, chosen greedily in table order."""
    gens: list[int] = []
    span = frozenset([table.identity])
    for i in range(len(table)):
        if i not in span:
            gens.append(i)
            span = table.subgroup(gens)
            if len(span) == len(table):
                break
    return gens


def _matrices_equal(a: CycloMatrix, b: CycloMatrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


@dataclass
class HolomorphicRep:
    table: GroupTable
    matrices: list[CycloMatrix]
    conductor: int

    def __getitem__(self, i: int) -> CycloMatrix:
        return self.matrices[i]

    @property
    def dim(self) -> int:
        return self.table.half_dim

    def det(self, i: int) -> CycloElem:
        return linalg.determinant(self.matrices[i])


def holomorphic_rep(action: TorusAction | None, table: GroupTable) -> HolomorphicRep:
    """Solve ``ρ(g) P = P h_g`` for every element of the table."""
    period = table.period if table.period is not None else (action.period if action else None)
    if period is None:
        raise NoPeriod("the holomorphic representation needs a period matrix")
    n = table.half_dim
    check_period(period, n)
    conductor = lcm(period[0][0].conductor, *(g.linear_order() for g in table.elements))
    mats = []
    for g in table.elements:
        rho = period_intertwiner(period, g.linear)
        mats.append([[CycloElem.coerce(x, conductor) for x in r] for r in rho])
    for i in generating_set(table):
        for j in range(len(table)):
            if not _matrices_equal(linalg.matmul(mats[i], mats[j]), mats[table.mul(i, j)]):
                raise NoSolution("intertwiners do not form a group homomorphism")
    return HolomorphicRep(table, mats, conductor)


@dataclass(frozen=True)
class SingularityType:
    """Type ``1/N (a_1, ..., a_n)`` of a cyclic quotient singularity."""

    order: int
    weights: tuple[int, ...]

    @property
    def age(self) -> Fraction:
        return Fraction(sum(self.weights), self.order)

    @property
    def fixed_dim(self) -> int:
        return sum(1 for a in self.weights if a == 0)

    @property
    def nonzero_count(self) -> int:
        return len(self.weights) - self.fixed_dim

    def power(self, k: int) -> SingularityType:
        return SingularityType(self.order, tuple(sorted(a * k % self.order for a in self.weights)))

    def __str__(self):
        return f"1/{self.order}({','.join(map(str, self.weights))})"


def eigenvalue_exponents(rho: CycloMatrix, order: int) -> tuple[int, ...]:
    """Exponents ``a`` (with multiplicity) such that ζ_N^a is an eigenvalue of ``rho``."""
    n = len(rho)
    if n == 0:
        return ()
    m = lcm(order, *(x.conductor for r in rho for x in r))
    rho = [[CycloElem.coerce(x, m) for x in r] for r in rho]
    poly = charpoly(rho, one=CycloElem(m, [1]))
    out = []
    for a in range(order):
        z = CycloElem.zeta(m, a * m // order)
        p = list(poly)
        while len(p) > 1 and poly_eval(p, z) == 0:
            out.append(a)
            p = poly_derivative(p)
    if len(out) != n:
        raise EigenvalueNotRootOfUnity(f"only {len(out)} of {n} eigenvalues are {order}-th roots of unity")
    return tuple(out)


def tangent_weights(el: Union[int, AffineAut], rep: HolomorphicRep) -> SingularityType:
    """Weights of the tangent action of ``el`` relative to ζ_N, N the order of its linear part."""
    i = el if isinstance(el, int) else rep.table.index[el]
    N = rep.table.elements[i].linear_order()
    return SingularityType(N, eigenvalue_exponents(rep[i], N))


def normalize_weights(sing: SingularityType) -> SingularityType:
    """Type of ``g^k`` where ``k`` inverts the first unit weight; that weight becomes 1 and leads."""
    N = sing.order
    unit = next((a for a in sing.weights if gcd(a, N) == 1), None)
    if unit is None:
        raise NoUnitWeight(f"no weight of {sing} is prime to {N}")
    k = pow(unit, -1, N) if N > 1 else 1
    ws = sorted(a * k % N for a in sing.weights)
    ws.remove(1 % N)
    return SingularityType(N, (1 % N, *ws))


@dataclass(frozen=True)
class CanonicityReport:
    canonical: bool
    min_age_witness: tuple[int, Fraction] | None
    kodaira_zero: bool
    uniruled: bool
    canonical_torsion_order: int
    quasi_reflections: tuple[int, ...]
    ages: dict = field(default_factory=dict, compare=False)
    types: dict = field(default_factory=dict, compare=False)


def reid_tai(table: GroupTable, rep: HolomorphicRep) -> CanonicityReport:
    """Reid-Tai test over all non-identity elements that have a fixpoint."""
    ages: dict[int, Fraction] = {}
    types: dict[int, SingularityType] = {}
    quasi = []
    for i, g in enumerate(table.elements):
        if i == table.identity or not has_fixpoint(g):
            continue
        sing = tangent_weights(i, rep)
        types[i] = sing
        ages[i] = sing.age
        if sing.nonzero_count == 1:
            quasi.append(i)
    witness = min(ages.items(), key=lambda kv: (kv[1], kv[0])) if ages else None
    canonical = all(a >= 1 for a in ages.values())
    torsion = 1
    for i in range(len(table)):
        order = rep.det(i).multiplicative_order()
        if order is None:
            raise EigenvalueNotRootOfUnity(f"det of element {i} is not a root of unity")
        torsion = lcm(torsion, order)
    return CanonicityReport(
        canonical=canonical,
        min_age_witness=witness,
        kodaira_zero=canonical,
        uniruled=not canonical,
        canonical_torsion_order=torsion,
        quasi_reflections=tuple(quasi),
        ages=ages,
        types=types,
    )
