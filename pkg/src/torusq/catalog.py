"""Closed-form cotangent dimensions for submanifolds and for surfaces.

Values are unstarred (``-inf`` allowed) unless stated; ``DimValue`` converts to
the starred convention where ``-inf`` becomes ``-rank``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import GeneralType, InvalidDims

NEG_INF = float("-inf")


class Marker(str, Enum):
    OUT_OF_SCOPE = "OUT_OF_SCOPE"
    UNDETERMINED = "UNDETERMINED"
    NEEDS_ETALE_REDUCTION = "NEEDS_ETALE_REDUCTION"


@dataclass(frozen=True)
class DimValue:
    value: float | int  # unstarred: an integer or NEG_INF
    rank: int

    def __post_init__(self):
        if self.value != NEG_INF:
            object.__setattr__(self, "value", int(self.value))
            if self.value <= -self.rank:
                raise ValueError(f"unstarred value {self.value} must exceed -rank = {-self.rank}")

    @classmethod
    def from_starred(cls, starred: int, rank: int) -> DimValue:
        if starred < -rank:
            raise ValueError("starred value below -rank")
        return cls(NEG_INF if starred == -rank else starred, rank)

    @property
    def starred(self) -> int:
        return -self.rank if self.value == NEG_INF else int(self.value)

    @property
    def is_neg_inf(self) -> bool:
        return self.value == NEG_INF

    def __str__(self):
        return "-inf" if self.is_neg_inf else str(self.value)


@dataclass(frozen=True)
class Open:
    """A value the classification leaves open, carrying the conjectured value."""

    conjectured: DimValue

    def __str__(self):
        return f"OPEN(conjectured {self.conjectured.starred})"


def _check_dims(n: int, N: int) -> None:
    if not 1 <= n < N:
        raise InvalidDims(f"need 1 <= n < N, got n={n}, N={N}")


def abelian_submanifold(n: int, N: int) -> tuple[int, int]:
    """Submanifold of dimension n with ample normal bundle in an N-dimensional abelian variety."""
    _check_dims(n, N)
    v = min(n, N - n)
    return v, v


def complete_intersection(n: int, N: int):
    """Smooth complete intersection of dimension n in P^N."""
    _check_dims(n, N)
    if 2 * n > N:
        return NEG_INF, NEG_INF
    return Marker.OUT_OF_SCOPE


# -- surfaces ---------------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceSpec:
    kappa: float | int  # NEG_INF, 0, 1 (2 is rejected)
    genus: int = 0
    isotrivial: bool = False
    has_singular_fiber: bool = False
    multiple_fibers: tuple[int, ...] = ()
    q_prime_hint: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "multiple_fibers", tuple(self.multiple_fibers))
        if self.kappa not in (NEG_INF, 0, 1, 2):
            raise ValueError(f"kappa must be -inf, 0, 1 or 2, got {self.kappa}")
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if any(k < 2 for k in self.multiple_fibers):
            raise ValueError("multiplicities of multiple fibres are at least 2")
        if self.kappa == 0 and self.q_prime_hint not in (0, 2):
            raise ValueError("kappa = 0 needs q_prime_hint 0 (K3/Enriques) or 2 (torus/bielliptic)")


@dataclass(frozen=True)
class SurfaceReport:
    kappa1: DimValue | None
    nu1: DimValue | Open | None
    status: str  # "computed", "open" or "needs_etale_reduction"
    rationale: str


def _starred(v: int) -> DimValue:
    return DimValue.from_starred(v, 2)


def surface_invariants(spec: SurfaceSpec) -> SurfaceReport:
    g = spec.genus
    if spec.kappa == 2:
        raise GeneralType("surfaces of general type are not covered")
    if spec.kappa == NEG_INF:
        v = _starred(-1 + min(1, g - 1))
        return SurfaceReport(v, v, "computed", "birationally P^1 x C: -1 + min(1, g - 1)")
    if spec.kappa == 0:
        v = _starred(spec.q_prime_hint - 2)
        return SurfaceReport(v, v, "computed", "kappa = 0: q' - 2 from the etale cover (torus or K3)")
    if spec.multiple_fibers:
        mult = spec.multiple_fibers
        if g == 0 and len(mult) == 2 and mult[0] != mult[1]:
            inner = surface_invariants(SurfaceSpec(1, 0, spec.isotrivial, spec.has_singular_fiber, ()))
            return SurfaceReport(inner.kappa1, inner.nu1, inner.status,
                                 "two multiple fibres of distinct multiplicity over P^1: cyclic cover; "
                                 + inner.rationale)
        return SurfaceReport(None, None, "needs_etale_reduction",
                             "multiple fibres: pass to a finite etale cover without multiple fibres first")
    if not spec.isotrivial:
        k = _starred(min(1, g - 1) - 1)
        if g == 0:
            return SurfaceReport(k, k, "computed", "non-isotrivial over P^1: kappa1* = -2 and nu1 = kappa1")
        return SurfaceReport(k, Open(k), "open",
                             "non-isotrivial elliptic over a base of genus >= 1: nu1 = kappa1 is conjectural")
    if spec.has_singular_fiber:
        value = {0: NEG_INF, 1: -1}.get(g, 1)
        v = DimValue(value, 2)
        return SurfaceReport(v, v, "computed", "isotrivial with a singular fibre: kappa(C) - 1 if g <= 1, kappa(C) if g >= 2")
    v = _starred(1)
    return SurfaceReport(v, v, "computed", "isotrivial without singular fibres: etale product, kappa1 = n - 1 forces nu1")


# -- growth of h^0(Sym^m Ω ⊗ A) for isotrivial fibrations ------------------------------

def fibre_degree(g: int, N: int, ell: int, d: int, m: int, p: int) -> int:
    """Degree ``(m - p) 2(g - 1) - [p/N] ℓ + d`` of the p-th graded piece."""
    return (m - p) * 2 * (g - 1) - (p // N) * ell + d


def h_upper(g: int, N: int, ell: int, d: int, m: int) -> int:
    """Riemann-Roch upper bound ``Σ_p max(0, deg + 1)``."""
    return sum(max(0, fibre_degree(g, N, ell, d, m, p) + 1) for p in range(m + 1))


@dataclass(frozen=True)
class GrowthReport:
    h_upper: int | None
    degree: int | None  # growth degree in m, None when eventually zero
    nu1: DimValue


def isotrivial_growth(g: int, N: int, ell: int, d: int, m: int | None = None) -> GrowthReport:
    """Growth class of the upper bound sequence and the induced ν₁ verdict."""
    if N not in (2, 3) or ell < 1 or d < 1 or g < 0:
        raise ValueError("need N in {2, 3}, ell >= 1, d >= 1, g >= 0")
    # the p-cutoff moves by one step each time m grows by 2(g-1)N + ℓ, so along
    # m0 + k·stride the bound is an honest polynomial in k
    stride = N * (2 * max(g - 1, 0) * N + ell)
    m0 = 4 * stride * (d + 2)
    degree = None
    for residue in range(N):
        seq = [h_upper(g, N, ell, d, m0 + residue + k * stride) for k in range(5)]
        if not any(seq):
            continue
        k = 0
        while any(seq) and k < 4:
            seq = [b - a for a, b in zip(seq, seq[1:])]
            k += 1
        deg = k - 1
        degree = deg if degree is None else max(degree, deg)
    nu1 = DimValue(NEG_INF if degree is None else degree - 1, 2)
    return GrowthReport(None if m is None else h_upper(g, N, ell, d, m), degree, nu1)


# -- inference between κ and ν --------------------------------------------------------

def dimension_inference(n: int, kappa1=None, nu1=None):
    """Complete a (κ₁, ν₁) pair using κ₁ = n - 1 ⇒ ν₁ = n - 1 and ν₁ = n ⇒ κ₁ = n."""
    if kappa1 is not None and nu1 is not None:
        return kappa1, nu1
    if kappa1 is not None and kappa1 == n - 1:
        return kappa1, n - 1
    if nu1 is not None and nu1 == n:
        return n, nu1
    return Marker.UNDETERMINED
