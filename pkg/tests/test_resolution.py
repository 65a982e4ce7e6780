import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gorsum import linalg as la
from gorsum import randgen as rg
from gorsum.algebra import AlgebraMorphism, algebra_as_module, quotient, quotient_module
from gorsum.fields import GF, QQ
from gorsum.resolution import (GolodUpTo, NotGolodAt, NotSurjective, StepBudgetExceeded, deviations, golod_test,
                               minimal_free_resolution, poincare_series)
from gorsum.series import RationalSeries

from helpers import alg

F = GF(101)


def test_hypersurface_resolution_is_periodic(field):
    A = alg(field, ["x"], ["x^4"])
    bt = minimal_free_resolution(A, None, 6)
    assert bt.betti == [1] * 7
    assert bt.graded_betti()[:4] == [{0: 1}, {1: 1}, {4: 1}, {5: 1}]


def test_square_zero_ideal_is_golod():
    A = alg(F, ["x", "y"], ["x^2", "x*y", "y^2"])
    assert poincare_series(A, None, 6) == RationalSeries([1], [1, -2]).expand(6)


def test_complete_intersection_over_rationals():
    A = alg(QQ, ["x", "y"], ["x^2", "y^2"])
    assert poincare_series(A, None, 5) == RationalSeries([1], [1, -2, 1]).expand(5)
    eps, verdict = deviations(A, 6)
    assert eps[1] == 2 and eps[2] == 2
    assert verdict.complete_intersection and verdict.codim == 2 and verdict.order == 6


def test_non_ci_verdict():
    A = alg(F, ["x", "y"], ["x^2", "x*y", "y^2"])
    eps, verdict = deviations(A, 5)
    assert not verdict.complete_intersection and eps[3] > 0


def test_differentials_compose_to_zero():
    A = alg(F, ["x", "y"], ["x^2", "x*y", "y^3"])
    bt = minimal_free_resolution(A, None, 4, keep_differentials=True)
    for i in range(1, 4):
        d1, d2 = bt.differential(i), bt.differential(i + 1)
        assert d1.shape[:2] == (bt.betti[i - 1], bt.betti[i])
        for h in range(d1.shape[0]):
            for j in range(d2.shape[1]):
                total = A.zero()
                for g in range(d1.shape[1]):
                    total = F.normalize(total + A.mul(d1[h, g], d2[g, j]))
                assert la.is_zero(total)


def test_resolution_of_a_module():
    A = alg(F, ["x", "y"], ["x^2", "y^2"])
    M = quotient_module(A.regular_module(), A.socle_basis)
    bt = minimal_free_resolution(A, M, 4)
    assert bt.betti[0] == 1 and bt.betti[1] == 1  # M = A/soc A is cyclic with one relation generator


def test_filtered_algebra_resolution():
    A = alg(F, ["x", "y"], ["x^2 - y^3", "x*y"])
    assert not A.graded
    assert minimal_free_resolution(A, None, 4).betti == [1, 2, 3, 4, 5]


def test_budget_is_enforced():
    A = alg(F, ["x", "y", "z"], ["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"])
    with pytest.raises(StepBudgetExceeded):
        minimal_free_resolution(A, None, 10, budget=200)


def test_golod_verdicts():
    G = alg(F, ["x", "y"], ["x^2", "y^2"])
    assert isinstance(golod_test(quotient(G, G.socle_basis)[1], 6), GolodUpTo)
    H = alg(F, ["x"], ["x^3"])
    res = golod_test(quotient(H, H.socle_basis)[1], 6)
    assert isinstance(res, NotGolodAt) and res.degree == 2
    with pytest.raises(NotSurjective):
        golod_test(AlgebraMorphism(quotient(H, H.socle_basis)[0], H, F.array([[1, 0], [0, 0], [0, 0]]), check=False))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32))
def test_betti_numbers_dominate_the_complete_intersection_series(seed):
    rng = np.random.default_rng(seed)
    A = rg.random_graded_algebra(F, rng, max_length=8)
    eps, _ = deviations(A, 5)  # raises on a negative deviation
    P = poincare_series(A, None, 5)
    lower = RationalSeries([1], [1]).expand(5)
    for _ in range(eps[1]):
        lower = lower * RationalSeries([1, 1]).expand(5)
    for _ in range(eps[2]):
        lower = lower / RationalSeries([1, 0, -1]).expand(5)
    assert all(p >= q for p, q in zip(P.coeffs, lower.coeffs))
    assert P.coeffs[1] == A.edim


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32))
def test_module_resolution_matches_regular_module(seed):
    rng = np.random.default_rng(seed)
    A = rg.random_graded_algebra(F, rng, max_length=8)
    kappa = rg.random_surjection(A, rng)
    bt = minimal_free_resolution(A, algebra_as_module(kappa), 3)
    assert bt.betti[0] == 1
