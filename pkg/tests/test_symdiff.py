from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from properties import cyclic_sweep, isotrivial_sweep, suite_sym_intersection
from torusq.errors import UnsupportedOrder, WeightsNotNormalized
from torusq.symdiff import (
    MonomialSubstitution,
    SymTensor,
    clebsch_gordan_dims,
    cyclic_descent_dim,
    isotrivial_descent_basis,
    monomial,
    multi_indices,
    pullback,
    s_exponent,
    sym_intersection_dim,
)

# chart (y1, y2) -> (y1, z2) with y2 = z2 y1^2
CHART = MonomialSubstitution.from_rules(2, [(1, (1, 0)), (1, (2, 1))])


# -- tensors and pullbacks -----------------------------------------------------------

def test_pullback_identity():
    ident = MonomialSubstitution.from_rules(2, [(1, (1, 0)), (1, (0, 1))])
    w = SymTensor.d(2, 0)
    assert pullback(w, ident) == w


def test_pullback_leibniz():
    got = pullback(SymTensor.d(2, 1), CHART)
    assert got.coefficient((0, 1)) == {(2, 0): 1}
    assert got.coefficient((1, 0)) == {(1, 1): 2}
    assert len(got.terms) == 2


def test_pullback_of_product():
    got = pullback(SymTensor.d(2, 0) * SymTensor.d(2, 1), CHART)
    assert got.coefficient((1, 1)) == {(2, 0): 1}
    assert got.coefficient((2, 0)) == {(1, 1): 2}


def test_from_ordered_symmetrises():
    one = monomial([0, 0])
    a = SymTensor.from_ordered(2, [(one, (0, 1)), (one, (1, 0))])
    assert a.coefficient((1, 1)) == {(0, 0): 2}


def test_mixed_degrees_rejected():
    with pytest.raises(ValueError):
        SymTensor(2, {(1, 0): monomial([0, 0]), (1, 1): monomial([0, 0])})


def random_tensor(rng, n, degree):
    terms = {}
    for idx in multi_indices(n, degree):
        if rng.random() < 0.5:
            terms[idx] = {tuple(rng.randint(0, 2) for _ in range(n)): rng.randint(-3, 3) or 1}
    return SymTensor(n, terms)


def random_substitution(rng, n):
    return MonomialSubstitution.from_rules(
        n, [(rng.choice([1, 2, -1]), tuple(rng.randint(0, 2) if j != i else 1 for j in range(n))) for i in range(n)]
    )


@pytest.mark.parametrize("seed", range(25))
def test_pullback_commutes_with_products(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    u, v = random_tensor(rng, n, rng.randint(0, 2)), random_tensor(rng, n, rng.randint(0, 2))
    s = random_substitution(rng, n)
    assert pullback(u * v, s) == pullback(u, s) * pullback(v, s)
    assert pullback(u + u, s) == pullback(u, s).scale(2)


# -- cyclic descent ----------------------------------------------------------------------

@pytest.mark.parametrize(
    "N, weights, m, r, dim",
    [(3, (1, 1), 3, 0, 0), (2, (1, 1), 0, 0, 1), (4, (1, 1, 1), 5, 1, 0)],
)
def test_cyclic_examples(N, weights, m, r, dim):
    c = cyclic_descent_dim(N, weights, m, r)
    assert c.dimension == dim and c.agree


@pytest.mark.parametrize("N, weights", [(6, (1, 1)), (3, (2, 1)), (3, (1, 3)), (4, (1, 0))])
def test_cyclic_rejects_unnormalised(N, weights):
    with pytest.raises(WeightsNotNormalized):
        cyclic_descent_dim(N, weights, 1)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]).flatmap(
    lambda N: st.tuples(st.just(N), st.lists(st.integers(1, N - 1), max_size=4), st.integers(0, 8))))
def test_s_exponent_nonnegative(data):
    N, rest, m = data
    weights = (1, *rest)
    for idx in multi_indices(len(weights), m):
        assert s_exponent(N, weights, idx) >= 0


def test_cyclic_sweep_small():
    cases, failures = cyclic_sweep(orders=(2, 3), max_vars=2, max_degree=5, max_pole=1)
    assert cases > 0 and failures == []


# -- isotrivial descent ----------------------------------------------------------------------

def test_isotrivial_n2_plus_m1():
    d = isotrivial_descent_basis(2, 1, 1)
    assert d.match
    assert (1, 0) in d.basis and (1, 1) in d.basis
    assert all(k % 2 == 1 for k, _ in d.basis)


def test_isotrivial_n2_minus_m1_same_shape():
    assert isotrivial_descent_basis(2, -1, 1).basis == isotrivial_descent_basis(2, 1, 1).basis


def test_isotrivial_n3_m0_functions_of_cube():
    d = isotrivial_descent_basis(3, 1, 0)
    assert d.match and all(k % 3 == 0 and p == 0 for k, p in d.basis)


def test_isotrivial_sweep():
    cases, failures = isotrivial_sweep(max_degree=3)
    assert cases == 16 and failures == []


def test_isotrivial_rejects_order():
    with pytest.raises(UnsupportedOrder):
        isotrivial_descent_basis(4, 1, 1)


# -- Clebsch-Gordan and intersections ----------------------------------------------------------

def test_clebsch_gordan():
    dims = clebsch_gordan_dims(50)
    assert dims[0] == (1, 1) and dims[1] == (1, 2) and dims[5] == (1, 6)
    assert all(d == (1, m + 1) for m, d in enumerate(dims))


@pytest.mark.parametrize(
    "bases, m, expected",
    [
        ([[[1, 0, 0], [0, 1, 0]], [[1, 0, 0], [0, 1, 0]]], 2, 3),
        ([[[1, 0, 0], [0, 1, 0]], [[0, 1, 0], [0, 0, 1]]], 2, 1),
    ],
)
def test_sym_intersection_examples(bases, m, expected):
    assert sym_intersection_dim(bases, m, 3) == (expected, expected)


def test_sym_intersection_random():
    assert suite_sym_intersection(seed=51, count=30) == 30


def test_sym_intersection_with_fractions():
    bases = [[[Fraction(1, 2), 1]], [[1, 2]]]
    assert sym_intersection_dim(bases, 3, 2) == (1, 1)
