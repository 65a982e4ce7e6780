import numpy as np
import pytest

from gorsum import randgen as rg
from gorsum.fields import GF, QQ

F = GF(101)


@pytest.mark.parametrize("seed", range(10))
def test_random_gorenstein_is_gorenstein(seed):
    rng = np.random.default_rng(seed)
    Q = rg.random_gorenstein(F, rng, max_length=10)
    assert Q.is_gorenstein and Q.graded
    h = Q.hilbert
    assert h == h[::-1]  # graded Gorenstein: symmetric Hilbert function


def test_gorenstein_from_functional_over_rationals():
    B = rg.truncated_polynomial_algebra(QQ, 2, 2)
    phi = QQ.zeros(B.dim)
    phi[[i for i, d in enumerate(B.degrees) if d == 2]] = [QQ(1), QQ(0), QQ(1)]
    Q = rg.gorenstein_from_functional(B, phi)
    assert Q.is_gorenstein and Q.hilbert == [1, 2, 1]


def test_truncated_and_square_zero():
    assert rg.truncated_polynomial_algebra(F, 2, 3).hilbert == [1, 2, 3, 4]
    assert rg.square_zero_algebra(F, 3).hilbert == [1, 3]
    assert rg.square_zero_algebra(F, 0).dim == 1


@pytest.mark.parametrize("seed", range(10))
def test_random_graded_algebra_respects_length(seed):
    A = rg.random_graded_algebra(F, np.random.default_rng(seed), max_length=9, min_length=3)
    assert 3 <= A.dim <= 9 and A.graded


@pytest.mark.parametrize("same_a", [True, False])
def test_gorenstein_diagram_shapes(same_a):
    rng = np.random.default_rng(7)
    for _ in range(5):
        R, S, T, eR, eS = rg.random_gorenstein_diagram(F, rng, same_a=same_a)
        assert R.is_gorenstein and S.is_gorenstein
        assert eR.is_surjective and eS.is_surjective
        assert eR.rank < R.dim and eS.rank < S.dim
        assert (R.a_invariant == S.a_invariant) == same_a


def test_common_quotient_commutes():
    rng = np.random.default_rng(3)
    for _ in range(5):
        R, S, T, eR, eS = rg.random_common_quotient(F, rng, max_length=10)
        assert eR.target is T and eS.target is T
        assert eR.is_surjective and eS.is_surjective


def test_random_surjection_kernel_is_an_ideal():
    rng = np.random.default_rng(11)
    A = rg.random_graded_algebra(F, rng, nvars=2, max_length=10)
    pi = rg.random_surjection(A, rng)
    assert pi.source is A and pi.is_surjective and pi.target.graded
