from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import det_gauss, snf_diagonal_from_minors
from properties import is_row_hnf, suite_member_mod, suite_normal_forms
from torusq.errors import NotFiniteOrder
from torusq.exactmath import (
    CycloElem,
    IntMatrix,
    char_poly_cyclotomic_factor,
    hermite_normal_form,
    member_mod_lattice,
    saturate,
    smith_normal_form,
)
from torusq.exactmath.normalforms import kernel_lattice, saturation_with_complement, unimodular_inverse

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


# -- Hermite form ------------------------------------------------------------------

@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[1, 0], [0, 1]], [[1, 0], [0, 1]]),
        ([[0, 1], [1, 0]], [[1, 0], [0, 1]]),
        ([[2, 4], [6, 8]], [[2, 0], [0, 4]]),
    ],
)
def test_hnf_examples(rows, expected):
    M = IntMatrix(rows)
    H, U = hermite_normal_form(M)
    assert H == IntMatrix(expected)
    assert abs(U.det()) == 1 and U @ M == H


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_hnf_contract(rows):
    M = IntMatrix(rows)
    H, U = hermite_normal_form(M)
    assert abs(U.det()) == 1
    assert U @ M == H
    assert is_row_hnf(H)


# -- Smith form ------------------------------------------------------------------------

@pytest.mark.parametrize(
    "M, diagonal",
    [
        (IntMatrix.diag([2, 3]), [1, 6]),
        (IntMatrix.identity(4).scale(-2), [2, 2, 2, 2]),
        (IntMatrix.zeros(3, 2), [0, 0]),
    ],
)
def test_snf_examples(M, diagonal):
    snf = smith_normal_form(M)
    assert snf.diagonal == diagonal
    assert snf.U @ M @ snf.V == snf.D


def test_snf_zero_matrix_has_no_factors():
    snf = smith_normal_form(IntMatrix.zeros(3, 3))
    assert snf.rank == 0 and snf.factors.invariant_factors == ()


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_snf_matches_minor_gcds(rows):
    M = IntMatrix(rows)
    snf = smith_normal_form(M)
    nonzero = [d for d in snf.diagonal if d]
    assert nonzero == snf_diagonal_from_minors(M)
    assert all(d > 0 for d in nonzero)
    assert abs(snf.U.det()) == 1 and abs(snf.V.det()) == 1


def test_normal_form_suite():
    assert suite_normal_forms(seed=11, count=30) == 30


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_det_agrees_with_rational_elimination(rows):
    assert IntMatrix(rows).det() == det_gauss(rows)


# -- saturation and kernels --------------------------------------------------------

@pytest.mark.parametrize(
    "columns, k, expected_rank",
    [([(2, 0)], 2, 1), ([(2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)], 4, 4), ([(2, 4), (0, 6)], 2, 2)],
)
def test_saturate_examples(columns, k, expected_rank):
    B = IntMatrix.from_columns(columns, k)
    S = saturate(B)
    assert S.cols == expected_rank
    if expected_rank == k:
        assert abs(S.det()) == 1
    if columns == [(2, 0)]:
        assert S == IntMatrix([[1], [0]])
    if S.cols == B.cols == k:
        assert B.det() % S.det() == 0


@settings(max_examples=50, deadline=None)
@given(matrices)
def test_saturation_is_idempotent_and_primitive(rows):
    B = IntMatrix(rows)
    S = saturate(B)
    assert saturate(S) == S
    W, r = saturation_with_complement(B)
    assert abs(W.det()) == 1 and r == S.cols
    if r:
        # primitive: the elementary divisors of the basis are all 1
        assert all(d == 1 for d in smith_normal_form(S).diagonal)
        # contains the original columns
        assert smith_normal_form(S.hstack(B)).rank == r


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_kernel_lattice(rows):
    M = IntMatrix(rows)
    K = kernel_lattice(M)
    assert (M @ K).is_zero() if K.cols else True
    assert K.cols == M.cols - smith_normal_form(M).rank


def test_unimodular_inverse():
    W = IntMatrix([[2, 1], [1, 1]])
    assert W @ unimodular_inverse(W) == IntMatrix.identity(2)


# -- membership modulo a lattice --------------------------------------------------------

@pytest.mark.parametrize(
    "t, M, expected",
    [
        ([0, 0], IntMatrix([[3, 1], [0, 5]]), True),
        ([Fraction(1, 2), 0, 0, 0], IntMatrix.diag([0, 0, -2, -2]), False),
        ([Fraction(1, 3), Fraction(1, 7)], IntMatrix.identity(2).scale(-2), True),
        ([Fraction(0), 0, Fraction(1, 2), Fraction(1, 3)], IntMatrix.diag([0, 0, -2, -2]), True),
    ],
)
def test_member_mod_examples(t, M, expected):
    assert member_mod_lattice(t, M) is expected


def test_member_mod_against_brute_force():
    assert suite_member_mod(seed=12, count=60) == 60


# -- characteristic polynomials ------------------------------------------------------

@pytest.mark.parametrize(
    "rows, factors",
    [
        ([[0, -1], [1, -1]], {3: 1}),
        ([[1, 0], [0, -1]], {1: 1, 2: 1}),
        ([[0, -1], [1, 0]], {4: 1}),
        ([[0, -1], [1, 1]], {6: 1}),
    ],
)
def test_cyclotomic_factorisation(rows, factors):
    assert char_poly_cyclotomic_factor(IntMatrix(rows)) == factors


def test_cyclotomic_factorisation_rejects_infinite_order():
    with pytest.raises(NotFiniteOrder):
        char_poly_cyclotomic_factor(IntMatrix([[2, 0], [0, 1]]))


# -- cyclotomic field arithmetic --------------------------------------------------------

def test_cyclotomic_examples():
    z3 = CycloElem.zeta(3)
    assert z3 * z3 * z3 == CycloElem.rational(3, 1)
    z4 = CycloElem.zeta(4)
    assert (z4 + z4.conjugate()).is_zero()
    z5 = CycloElem.zeta(5)
    one = CycloElem.rational(5, 1)
    assert (one + z5).inverse() * (one + z5) == one


cyclo = st.sampled_from([3, 4, 5, 8, 12]).flatmap(
    lambda m: st.tuples(
        st.just(m),
        st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=1, max_size=m),
        st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=1, max_size=m),
        st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=1, max_size=m),
    )
)


@settings(max_examples=80, deadline=None)
@given(cyclo)
def test_cyclotomic_field_axioms(data):
    m, a, b, c = data
    x, y, z = CycloElem(m, a), CycloElem(m, b), CycloElem(m, c)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    if not x.is_zero():
        assert x * x.inverse() == CycloElem.rational(m, 1)
        assert (y / x) * x == y


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 8, 12])
def test_zeta_order(m):
    assert CycloElem.zeta(m).multiplicative_order() == m
