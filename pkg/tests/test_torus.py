from __future__ import annotations

import random
from fractions import Fraction

import pytest

from oracles import brute_fixpoint_count, orbit_quotient_free, random_action, random_finite_order_matrix, random_unimodular
from properties import suite_c_big_invariance, suite_fixpoint_count, suite_fstar_generates, suite_quotient_free
from torusq import fixtures
from torusq.errors import GroupTooLarge, InvalidComplexStructure, NotFiniteOrder
from torusq.exactmath import IntMatrix, smith_normal_form
from torusq.exactmath.normalforms import kernel_lattice, unimodular_inverse
from torusq.invariants import analyze
from torusq.torus import (
    AffineAut,
    TorusAction,
    classify,
    enumerate_group,
    fix_locus,
    has_fixpoint,
    normalize_translations,
    subtorus_image,
    torsion_level,
    verify_quotient_free,
)


def table_of(name):
    return enumerate_group(fixtures.load(name))


# -- affine maps ------------------------------------------------------------------

def test_composition_and_inverse():
    g = AffineAut(IntMatrix([[0, -1], [1, -1]]), (Fraction(1, 3), 0))
    assert (g * g.inverse()).is_identity()
    assert g.linear_order() == 3
    assert (g ** 3).is_identity() or (g ** 3).is_translation()
    x = (Fraction(1, 5), Fraction(2, 5))
    assert (g * g)(x) == g(g(x))


def test_infinite_order_rejected():
    with pytest.raises(NotFiniteOrder):
        AffineAut.linear_only(IntMatrix([[2, 0], [0, 1]])).linear_order()
    action = TorusAction(1, [AffineAut.linear_only(IntMatrix([[2, 0], [0, 1]]))])
    with pytest.raises(NotFiniteOrder):
        enumerate_group(action)


# -- enumeration ----------------------------------------------------------------------

@pytest.mark.parametrize(
    "name, order",
    [("kummer", 2), ("eisenstein", 3), ("gauss", 4), ("hyperelliptic", 2), ("beauville_s3", 6), ("kummer_times_e", 2)],
)
def test_fixture_group_orders(name, order):
    table = table_of(name)
    assert len(table) == order
    for i in range(order):
        for j in range(order):
            assert table.elements[i] * table.elements[j] in table.index


def test_cap_is_enforced():
    with pytest.raises(GroupTooLarge):
        enumerate_group(fixtures.load("beauville_s3"), cap=4)


def test_odd_eigenvalue_multiplicity_rejected():
    action = TorusAction(1, [AffineAut.linear_only(IntMatrix.diag([1, -1]))])
    with pytest.raises(InvalidComplexStructure):
        enumerate_group(action)


# -- translation normalisation -----------------------------------------------------------

def test_normalize_without_translations_is_identity():
    table = table_of("kummer")
    new, K = normalize_translations(table)
    assert new is table and K == IntMatrix.identity(4)


def test_normalize_trivial_group():
    table = enumerate_group(TorusAction(1, [AffineAut.identity(2)]))
    new, K = normalize_translations(table)
    assert len(new) == 1 and K == IntMatrix.identity(2)


def test_normalize_halves_group_with_half_translation():
    minus = AffineAut.linear_only(-IntMatrix.identity(4))
    half = AffineAut(IntMatrix.identity(4), (Fraction(1, 2), 0, 0, 0))
    table = enumerate_group(TorusAction(2, [minus, half]))
    assert len(table) == 4
    new, K = normalize_translations(table)
    assert len(new) == 2
    assert abs(K.det()) == 2
    assert all(not (g.is_translation() and any(g.translation)) for g in new.elements)
    # composition is preserved: images of products are products of images
    for a in new.elements:
        for b in new.elements:
            assert a * b in new.index


# -- fixpoints -----------------------------------------------------------------------------

@pytest.mark.parametrize("name, expected", [("kummer", True), ("hyperelliptic", False)])
def test_has_fixpoint_generators(name, expected):
    assert has_fixpoint(fixtures.load(name).generators[0]) is expected


def test_identity_has_fixpoint():
    assert has_fixpoint(AffineAut.identity(4))


@pytest.mark.parametrize("name, count", [("kummer", 16), ("eisenstein", 27)])
def test_isolated_fixpoint_counts(name, count):
    g = fixtures.load(name).generators[0]
    info = fix_locus(g)
    assert info.nonempty and info.dim == 0 and info.isolated_count == count


def test_kummer_count_brute_force():
    assert brute_fixpoint_count(-IntMatrix.identity(4), 2) == 16


def test_hyperelliptic_fix_locus_empty():
    assert not fix_locus(fixtures.load("hyperelliptic").generators[0]).nonempty


def test_positive_dimensional_fix_locus():
    info = fix_locus(fixtures.load("kummer_times_e").generators[0])
    assert info.nonempty and info.dim == 1 and info.isolated_count is None


def test_fixpoint_count_suite():
    assert suite_fixpoint_count(seed=21, count=30) == 30


# -- subtorus images --------------------------------------------------------------------

def test_subtorus_examples():
    assert subtorus_image(fixtures.load("kummer").generators[0]).rank == 4
    hyp = subtorus_image(fixtures.load("hyperelliptic").generators[0])
    assert hyp.rank == 2
    assert hyp.basis == IntMatrix([[0, 0], [0, 0], [1, 0], [0, 1]])
    assert subtorus_image(AffineAut.identity(4)).rank == 0


@pytest.mark.parametrize("seed", range(10))
def test_isogeny_of_image_and_kernel(seed):
    """C_g + ker(h - 1) has finite index in Λ, with exponent dividing the order."""
    rng = random.Random(seed)
    h = random_finite_order_matrix(rng, 3, allow_one=True)
    g = AffineAut.linear_only(h)
    C = subtorus_image(g).basis
    ker = kernel_lattice(g.shift_matrix())
    both = C.hstack(ker) if C.cols and ker.cols else (C if C.cols else ker)
    snf = smith_normal_form(both)
    assert snf.rank == h.rows
    N = g.linear_order()
    assert all(N % d == 0 for d in snf.diagonal)


# -- classification -------------------------------------------------------------------------

def test_classify_kummer():
    cl = classify(table_of("kummer"))
    assert cl.E == frozenset() and cl.F == frozenset({0, 1}) and cl.Fprime == frozenset({0, 1})
    assert cl.quotient_order == 1 and cl.generated_by_F


def test_classify_hyperelliptic():
    cl = classify(table_of("hyperelliptic"))
    assert cl.F == frozenset({0}) and cl.Fprime == frozenset({0})
    assert cl.quotient_order == 2 and cl.etale and cl.generated_by_E


def test_classify_beauville():
    table = table_of("beauville_s3")
    cl = classify(table)
    assert cl.F == frozenset(range(6))
    assert cl.Fprime == frozenset(range(6)) and cl.fstar_generates_fprime
    assert all(has_fixpoint(g) for g in table.elements)


def test_fstar_suite():
    assert suite_fstar_generates(seed=22, count=20) == 20


# -- quotient freeness -----------------------------------------------------------------------

@pytest.mark.parametrize("name", fixtures.NAMES)
@pytest.mark.parametrize("k", range(1, 7))
def test_quotient_free_all_fixtures(name, k):
    table, _ = normalize_translations(table_of(name))
    assert verify_quotient_free(table, k)


def test_hyperelliptic_k4_against_brute_orbits():
    table = table_of("hyperelliptic")
    cl = classify(table)
    assert verify_quotient_free(table, 4, cl)
    assert orbit_quotient_free(table.elements, cl.Fprime, torsion_level(table, 4))


def test_quotient_free_suite():
    assert suite_quotient_free(seed=23, count=20) == 20


def test_torsion_level_includes_translation_denominators():
    assert torsion_level(table_of("hyperelliptic"), 3) == 6


def test_bad_level_rejected():
    with pytest.raises(ValueError):
        verify_quotient_free(table_of("kummer"), 0)


# -- invariance ------------------------------------------------------------------------

def test_c_big_suite():
    assert suite_c_big_invariance(seed=24, count=20) == 20


@pytest.mark.parametrize("seed", range(8))
def test_q_prime_invariant_under_change_of_basis(seed):
    rng = random.Random(seed)
    while True:
        action = random_action(rng, max_k=2)
        try:
            base = analyze(TorusAction(action.half_dim, action.generators), cap=300)
            break
        except GroupTooLarge:
            continue
    W = random_unimodular(rng, action.rank, steps=5)
    Winv = unimodular_inverse(W)
    gens = [AffineAut(W @ g.linear @ Winv, tuple(W @ list(g.translation))) for g in action.generators]
    moved = analyze(TorusAction(action.half_dim, gens), cap=300)
    assert moved.report.q_prime == base.report.q_prime
    assert moved.report.group_order == base.report.group_order
    assert len(moved.classification.F) == len(base.classification.F)
