"""Exact arithmetic over the integers and over cyclotomic fields.

Rationals are plain :class:`fractions.Fraction` values.
"""
from fractions import Fraction as Rat

from .cyclotomic import CycloElem
from .intmatrix import IntMatrix
from .normalforms import (
    FiniteAbelianGroup,
    SmithForm,
    hermite_normal_form,
    integer_rank,
    kernel_lattice,
    member_mod_lattice,
    saturate,
    saturation_with_complement,
    smith_normal_form,
    unimodular_inverse,
)
from .polys import char_poly_cyclotomic_factor, charpoly, cyclotomic_poly, euler_phi, lcm

__all__ = [
    "Rat",
    "CycloElem",
    "IntMatrix",
    "FiniteAbelianGroup",
    "SmithForm",
    "hermite_normal_form",
    "smith_normal_form",
    "saturate",
    "saturation_with_complement",
    "kernel_lattice",
    "member_mod_lattice",
    "integer_rank",
    "unimodular_inverse",
    "char_poly_cyclotomic_factor",
    "charpoly",
    "cyclotomic_poly",
    "euler_phi",
    "lcm",
]
