from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

import pytest

from oracles import random_action
from properties import _random_tables, suite_age_inverse
from torusq import fixtures
from torusq.errors import GroupTooLarge, InvalidComplexStructure, NoSolution, NoUnitWeight
from torusq.exactmath import CycloElem, char_poly_cyclotomic_factor, euler_phi
from torusq.singular import (
    SingularityType,
    holomorphic_rep,
    normalize_weights,
    reid_tai,
    tangent_weights,
)
from torusq.torus import TorusAction, enumerate_group, has_fixpoint, period_intertwiner


def rep_of(name):
    action = fixtures.load(name)
    table = enumerate_group(action)
    return table, holomorphic_rep(action, table)


def scalar(rho, c):
    n = len(rho)
    return all(rho[i][j] == (c if i == j else 0 * c) for i in range(n) for j in range(n))


# -- holomorphic representation ------------------------------------------------------------

def test_kummer_rep_is_minus_identity():
    table, rep = rep_of("kummer")
    assert scalar(rep[1], CycloElem.rational(4, -1))


def test_eisenstein_rep_is_scalar_cube_root():
    table, rep = rep_of("eisenstein")
    g = table.index[fixtures.load("eisenstein").generators[0]]
    z = rep[g][0][0]
    assert z.multiplicative_order() == 3
    assert scalar(rep[g], z)


def test_inconsistent_period_rejected():
    action = fixtures.load("eisenstein")
    period = [list(r) for r in action.period]
    period[0][1] = period[0][1] + CycloElem.rational(3, 1)
    with pytest.raises(NoSolution):
        period_intertwiner(period, action.generators[0].linear)
    with pytest.raises(InvalidComplexStructure):
        enumerate_group(TorusAction(action.half_dim, action.generators, period))


def test_rep_is_homomorphism():
    table, rep = rep_of("beauville_s3")
    one = CycloElem.rational(rep.conductor, 1)
    for i in range(len(table)):
        for j in range(len(table)):
            a, b, ab = rep[i], rep[j], rep[table.mul(i, j)]
            n = len(a)
            prod = [[sum((a[r][k] * b[k][c] for k in range(n)), 0 * one) for c in range(n)] for r in range(n)]
            assert prod == [list(r) for r in ab]


# -- tangent weights --------------------------------------------------------------------

@pytest.mark.parametrize(
    "name, order, weights, age",
    [("kummer", 2, (1, 1), Fraction(1)), ("gauss", 4, (1, 1, 1), Fraction(3, 4))],
)
def test_generator_weights(name, order, weights, age):
    table, rep = rep_of(name)
    g = fixtures.load(name).generators[0]
    sing = tangent_weights(g, rep)
    assert (sing.order, sing.weights, sing.age) == (order, weights, age)


def test_identity_weights():
    table, rep = rep_of("gauss")
    sing = tangent_weights(table.identity, rep)
    assert sing.weights == (0, 0, 0) and sing.age == 0


@pytest.mark.parametrize(
    "given, expected",
    [(SingularityType(4, (2, 3, 3)), SingularityType(4, (1, 1, 2))),
     (SingularityType(3, (1, 1, 1)), SingularityType(3, (1, 1, 1)))],
)
def test_normalize_weights(given, expected):
    assert normalize_weights(given) == expected


def test_normalize_weights_needs_unit():
    with pytest.raises(NoUnitWeight):
        normalize_weights(SingularityType(4, (2, 2, 2)))


def test_type_string():
    assert str(SingularityType(4, (1, 1, 2))) == "1/4(1,1,2)"


# -- canonicity -------------------------------------------------------------------------

def test_kummer_canonical():
    table, rep = rep_of("kummer")
    can = reid_tai(table, rep)
    assert can.canonical and can.kodaira_zero and not can.uniruled
    assert can.quasi_reflections == ()
    assert can.min_age_witness[1] == 1


def test_eisenstein_canonical():
    table, rep = rep_of("eisenstein")
    can = reid_tai(table, rep)
    assert can.canonical and can.canonical_torsion_order == 1 and can.kodaira_zero
    assert all(a >= 1 for a in can.ages.values())
    assert all(normalize_weights(t) == SingularityType(3, (1, 1, 1)) for t in can.types.values())


def test_gauss_not_canonical():
    table, rep = rep_of("gauss")
    can = reid_tai(table, rep)
    assert not can.canonical and can.uniruled
    assert can.min_age_witness[1] == Fraction(3, 4)
    assert can.canonical_torsion_order == 4


def test_hyperelliptic_has_no_singular_points():
    table, rep = rep_of("hyperelliptic")
    can = reid_tai(table, rep)
    assert can.canonical and can.ages == {} and can.min_age_witness is None


def test_quasi_reflection_detected():
    table, rep = rep_of("kummer_times_e")
    # -1 on two of three factors: weights (0, 1, 1), not a quasi-reflection
    assert reid_tai(table, rep).quasi_reflections == ()
    sing = tangent_weights(1, rep)
    assert sing.weights == (0, 1, 1) and sing.nonzero_count == 2


# -- properties ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", fixtures.NAMES)
def test_powers_multiply_weights(name):
    """The type of g^k equals the weights of g multiplied by k, for k prime to N."""
    table, rep = rep_of(name)
    for i, g in enumerate(table.elements):
        sing = tangent_weights(i, rep)
        N = sing.order
        for k in range(1, N + 1):
            if gcd(k, N) != 1:
                continue
            direct = tangent_weights(table.index[g ** k], rep)
            assert direct == sing.power(k)
            assert direct.age == sing.power(k).age


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_age_of_inverse(name):
    table, rep = rep_of(name)
    for i in range(len(table)):
        s, t = tangent_weights(i, rep), tangent_weights(table.inverse(i), rep)
        assert sorted((s.order - a) % s.order for a in s.weights) == list(t.weights)
        assert s.age + t.age == s.nonzero_count


def test_age_of_inverse_random():
    assert suite_age_inverse(seed=31, count=20) == 20


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_det_is_root_of_unity_dividing_order(name):
    table, rep = rep_of(name)
    can = reid_tai(table, rep)
    assert len(table) % can.canonical_torsion_order == 0
    for i in range(len(table)):
        assert rep.det(i).multiplicative_order() is not None


def _eigen_orders_match(table, rep):
    for i, g in enumerate(table.elements):
        sing = tangent_weights(i, rep)
        N = sing.order
        counts = {}
        for a in sing.weights:
            d = N // gcd(a, N)
            counts[d] = counts.get(d, 0) + 1
        factors = char_poly_cyclotomic_factor(g.linear)
        # eigenvalues of h on Λ⊗C are those of ρ together with their conjugates
        assert {d: 2 * c for d, c in counts.items()} == {d: e * euler_phi(d) for d, e in factors.items()}


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_eigenvalues_consistent_with_lattice(name):
    _eigen_orders_match(*rep_of(name))


def test_eigenvalues_consistent_random():
    for action, table in _random_tables(32, 15, cap=100, max_k=2):
        _eigen_orders_match(table, holomorphic_rep(action, table))


def test_reid_tai_only_looks_at_elements_with_fixpoints():
    rng = random.Random(33)
    for _ in range(10):
        action = random_action(rng, max_k=2)
        try:
            table = enumerate_group(action, cap=100)
        except GroupTooLarge:
            continue
        can = reid_tai(table, holomorphic_rep(action, table))
        expected = {i for i, g in enumerate(table.elements) if i != table.identity and has_fixpoint(g)}
        assert set(can.ages) == expected
