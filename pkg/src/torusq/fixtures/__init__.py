"""Reference actions used throughout the tests and the CLI examples.

Each builder returns a :class:`TorusAction` with a period matrix; the same
actions ship as JSON documents next to this file.
"""
from __future__ import annotations

from fractions import Fraction
from importlib import resources

from ..exactmath import CycloElem, IntMatrix
from ..torus import AffineAut, TorusAction

NAMES = ("kummer", "eisenstein", "gauss", "hyperelliptic", "beauville_s3", "kummer_times_e")


def _curve_period(blocks: int, m: int) -> list[list[CycloElem]]:
    """Period of E^blocks with E = C/(Z + Z ζ_m): row i is (1, ζ_m) on block i."""
    zero, one, z = CycloElem(m, [0]), CycloElem(m, [1]), CycloElem.zeta(m)
    rows = []
    for i in range(blocks):
        row = [zero] * (2 * blocks)
        row[2 * i], row[2 * i + 1] = one, z
        rows.append(row)
    return rows


def _blocks(block: list[list[int]], count: int) -> IntMatrix:
    return IntMatrix.block_diag(*([IntMatrix(block)] * count))


def kummer() -> TorusAction:
    return TorusAction(2, [AffineAut.linear_only(-IntMatrix.identity(4))], _curve_period(2, 4), "kummer")


def eisenstein() -> TorusAction:
    g = AffineAut.linear_only(_blocks([[0, -1], [1, -1]], 3))
    return TorusAction(3, [g], _curve_period(3, 3), "eisenstein")


def gauss() -> TorusAction:
    g = AffineAut.linear_only(_blocks([[0, -1], [1, 0]], 3))
    return TorusAction(3, [g], _curve_period(3, 4), "gauss")


def hyperelliptic() -> TorusAction:
    g = AffineAut(IntMatrix.diag([1, 1, -1, -1]), (Fraction(1, 2), 0, 0, 0))
    return TorusAction(2, [g], _curve_period(2, 4), "hyperelliptic")


def beauville_s3() -> TorusAction:
    """S_3 permuting the factors of B^3, restricted to A = {b1 + b2 + b3 = 0} ≅ B^2.

    B = E_i x E_i; coordinates (b1, b2) with b3 = -b1 - b2.
    """
    i4 = IntMatrix.identity(4)
    swap = AffineAut.linear_only(IntMatrix([[0, 1], [1, 0]]).kron(i4))
    cycle = AffineAut.linear_only(IntMatrix([[-1, -1], [1, 0]]).kron(i4))
    return TorusAction(4, [swap, cycle], _curve_period(4, 4), "beauville_s3")


def kummer_times_e() -> TorusAction:
    g = AffineAut.linear_only(IntMatrix.diag([-1, -1, -1, -1, 1, 1]))
    return TorusAction(3, [g], _curve_period(3, 4), "kummer_times_e")


BUILDERS = {
    "kummer": kummer,
    "eisenstein": eisenstein,
    "gauss": gauss,
    "hyperelliptic": hyperelliptic,
    "beauville_s3": beauville_s3,
    "kummer_times_e": kummer_times_e,
}


def document_path(name: str):
    return resources.files(__name__).joinpath(f"{name}.json")


def load(name: str) -> TorusAction:
    """Load the shipped JSON document for ``name``."""
    from ..io import parse_action

    return parse_action(document_path(name).read_text(encoding="utf-8"))
