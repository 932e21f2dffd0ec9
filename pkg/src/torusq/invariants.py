"""Birational invariants of a torus quotient A/G computed from the lattice action."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import InvarianceViolation, NonIntegerDimension, NoPeriod
from .exactmath import CycloElem, IntMatrix, charpoly, integer_rank, member_mod_lattice, saturation_with_complement
from .exactmath import unimodular_inverse
from .singular import CanonicityReport, HolomorphicRep, generating_set, holomorphic_rep, reid_tai
from .torus import (
    AffineAut,
    Classification,
    GroupTable,
    SublatticeBasis,
    TorusAction,
    classify,
    enumerate_group,
    fix_locus,
    normalize_translations,
)


@dataclass(frozen=True)
class Pi1Report:
    image_rank: int
    finite: bool
    abelian_exponent_bound: int | None = None


@dataclass(frozen=True)
class InvariantReport:
    n: int
    q_prime: int
    kappa1_star: int
    nu1_star: int
    etale: bool
    reduction: str
    group_order: int
    pi1: Pi1Report
    hodge: tuple[int, ...] | None = None
    euler_char: int | None = None


def c_big(table: GroupTable, classification: Classification) -> SublatticeBasis:
    """Saturated lattice of the subtorus generated by the C_g, g in F*."""
    rank = table.rank
    gens = IntMatrix.zeros(rank, 0)
    for i in sorted(classification.Fstar):
        gens = gens.hstack(table.elements[i].shift_matrix())
    if gens.cols == 0:
        return SublatticeBasis(rank, gens, 0)
    sub = SublatticeBasis.from_generators(gens)
    for k, g in enumerate(table.elements):
        if not sub.is_invariant_under(g.linear):
            raise InvarianceViolation(f"C_G is not preserved by element {k}")
    return sub


def _reduction_note(table: GroupTable, cl: Classification) -> str:
    if len(cl.Fprime) == 1:
        return "etale: F' trivial, A/G is an etale quotient of A"
    if len(cl.Fprime) < len(table):
        return "computed on A/F'; A/F' -> A/G is etale"
    return "none: G = F'"


def pi1_report(table: GroupTable, classification: Classification, q_prime: int | None = None) -> Pi1Report:
    if q_prime is None:
        q_prime = table.half_dim - c_big(table, classification).rank // 2
    gens = generating_set(table)
    bound = None
    if gens:
        stacked = table.elements[gens[0]].shift_matrix()
        shifts = list(table.elements[gens[0]].translation)
        for i in gens[1:]:
            stacked = stacked.vstack(table.elements[i].shift_matrix())
            shifts += table.elements[i].translation
        if integer_rank(stacked) == table.rank and member_mod_lattice(shifts, stacked):
            bound = len(table)
    return Pi1Report(image_rank=2 * q_prime, finite=q_prime == 0, abelian_exponent_bound=bound)


def q_prime_and_dims(table: GroupTable, classification: Classification) -> InvariantReport:
    n = table.half_dim
    sub = c_big(table, classification)
    q = n - sub.rank // 2
    return InvariantReport(
        n=n,
        q_prime=q,
        kappa1_star=q - n,
        nu1_star=q - n,
        etale=len(classification.Fprime) == 1,
        reduction=_reduction_note(table, classification),
        group_order=len(table),
        pi1=pi1_report(table, classification, q),
    )


@dataclass(frozen=True)
class HodgeReport:
    hodge: tuple[int, ...]
    euler_char: int
    euler_char_direct: int


def _average_to_int(total: CycloElem, count: int, what: str) -> int:
    avg = total / count
    if not avg.is_rational():
        raise NonIntegerDimension(f"{what} is not rational: {avg!r}")
    v = avg.to_fraction()
    if v.denominator != 1 or v < 0:
        raise NonIntegerDimension(f"{what} = {v} is not a nonnegative integer")
    return int(v)


def hodge_invariants(table: GroupTable, action: TorusAction | None = None,
                     rep: HolomorphicRep | None = None) -> HodgeReport:
    """Dimensions of G-invariant (0,p)-forms by averaging the character of Λ^p."""
    if rep is None:
        if table.period is None and (action is None or action.period is None):
            raise NoPeriod("Hodge numbers need the analytic tier (a period matrix)")
        rep = holomorphic_rep(action, table)
    n = table.half_dim
    m = rep.conductor
    one = CycloElem(m, [1])
    sums = [CycloElem(m, [0]) for _ in range(n + 1)]
    direct = CycloElem(m, [0])
    for i in range(len(table)):
        c = charpoly(rep[i], one=one)  # c[n-p] = (-1)^p e_p
        for p in range(n + 1):
            e_p = c[n - p] * (-1) ** p
            sums[p] = sums[p] + CycloElem.coerce(e_p, m).conjugate()
        # det(1 - ρ) = charpoly(1)
        direct = direct + CycloElem.coerce(sum(c, 0 * one), m).conjugate()
    hodge = tuple(_average_to_int(s, len(table), f"h^(0,{p})") for p, s in enumerate(sums))
    chi = sum((-1) ** p * h for p, h in enumerate(hodge))
    avg = (direct / len(table))
    if not avg.is_rational() or avg.to_fraction().denominator != 1:
        raise NonIntegerDimension(f"character average of det(1 - ρ) is not an integer: {avg!r}")
    return HodgeReport(hodge, chi, int(avg.to_fraction()))


@dataclass
class AlbaneseDecomposition:
    base_dim: int
    base_basis: IntMatrix  # columns complete C_G to a basis of Λ
    fiber: SublatticeBasis
    fiber_action: TorusAction | None
    fiber_report: InvariantReport | None
    outer_etale: bool
    note: str = ""

    @property
    def fiber_q_prime(self) -> int:
        return 0 if self.fiber_report is None else self.fiber_report.q_prime


def albanese_decomposition(table: GroupTable, classification: Classification,
                           cap: int | None = None) -> AlbaneseDecomposition:
    """Split A -> B_G = A/C_G; the group acts trivially on B_G and on each fibre like on C_G."""
    outer = len(classification.Fprime) < len(table)
    note = ""
    if outer:
        table = table.sub_table(classification.Fprime)
        classification = classify(table)
        note = "applied to F'; the outer quotient by G/F' is etale"
    sub = c_big(table, classification)
    W, r = saturation_with_complement(sub.basis)
    Winv = unimodular_inverse(W)
    rank = table.rank
    fiber_gens = []
    for k, g in enumerate(table.elements):
        hw = Winv @ g.linear @ W
        tw = Winv @ list(g.translation)
        lower_left = hw.submatrix(range(r, rank), range(r))
        base_lin = hw.submatrix(range(r, rank), range(r, rank))
        if not lower_left.is_zero() or not base_lin.is_identity() or any(x.denominator != 1 for x in tw[r:]):
            raise InvarianceViolation(f"element {k} does not act trivially on A/C_G")
        if r:
            fiber_gens.append(AffineAut(hw.submatrix(range(r), range(r)), tuple(tw[:r])))
    base_basis = W.submatrix(range(rank), range(r, rank))
    if r == 0:
        return AlbaneseDecomposition(table.half_dim, base_basis, sub, None, None, outer, note)
    fiber_action = TorusAction(r // 2, fiber_gens, None, "fiber")
    ftable = enumerate_group(fiber_action, cap)
    fcl = classify(ftable)
    report = q_prime_and_dims(ftable, fcl)
    return AlbaneseDecomposition(table.half_dim - r // 2, base_basis, sub, fiber_action, report, outer, note)


# -- full pipeline ---------------------------------------------------------------

@dataclass
class Analysis:
    action: TorusAction
    table: GroupTable
    basis_change: IntMatrix
    classification: Classification
    report: InvariantReport
    fixpoints: dict = field(default_factory=dict)
    tier: str = "lattice"
    hodge: HodgeReport | None = None
    canonicity: CanonicityReport | None = None
    rep: HolomorphicRep | None = None


def analyze(action: TorusAction, cap: int | None = None, tier: str | None = None) -> Analysis:
    """Run the full pipeline on an action and collect the report."""
    tier = tier or action.tier
    if tier == "analytic" and action.period is None:
        raise NoPeriod("analytic tier requested but the document has no period")
    raw = enumerate_group(action, cap)
    table, K = normalize_translations(raw)
    if tier == "lattice":
        table.period = None
    cl = classify(table)
    report = q_prime_and_dims(table, cl)
    fix = {i: fix_locus(g) for i, g in enumerate(table.elements)}
    out = Analysis(action, table, K, cl, report, fix, tier)
    if tier == "analytic":
        out.rep = holomorphic_rep(None, table)
        out.hodge = hodge_invariants(table, rep=out.rep)
        out.canonicity = reid_tai(table, out.rep)
        out.report = replace(report, hodge=out.hodge.hodge, euler_char=out.hodge.euler_char)
    return out
