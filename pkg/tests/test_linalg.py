import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gorsum import linalg as la
from gorsum import _kernels_py
from gorsum.fields import GF, QQ, FieldError


def _mat(F, rows):
    return F.array(rows)


def test_rank_and_nullspace(field):
    A = _mat(field, [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 1]])
    N = la.nullspace(field, A)
    assert la.is_zero(la.matmul(field, A, N))
    assert la.rank(field, A) + N.shape[1] == 4


def test_solve_consistent_and_inconsistent(field):
    A = _mat(field, [[1, 1], [0, 1], [1, 2]])
    x = la.solve(field, A, _mat(field, [3, 1, 4]))
    assert np.array_equal(la.matmul(field, A, x.reshape(-1, 1))[:, 0], _mat(field, [3, 1, 4]))
    assert la.solve(field, A, _mat(field, [1, 0, 0])) is None


def test_inverse_of_singular_raises():
    with pytest.raises(ZeroDivisionError):
        la.inverse(QQ, QQ.array([[1, 2], [2, 4]]))


def test_rational_entries_rejected_in_prime_field():
    A = QQ.array([[1, 2], [3, 4]]) / 3
    with pytest.raises(FieldError):
        la.rank(GF(7), A)


def test_subspace_coordinates():
    F = GF(11)
    S = la.Subspace(F, F.array([[1, 0], [1, 1], [0, 1], [2, 2]]))
    v = F.normalize(F.array([3, 8, 5, 16]))
    assert np.array_equal(S.coordinates(v), F.array([3, 5]))
    assert not S.contains(F.array([1, 0, 0, 0]))
    with pytest.raises(la.NotInSubspace):
        S.coordinates(F.array([0, 0, 0, 1]))


def test_matmul_blas_path_is_exact():
    F = GF(101)
    rng = np.random.default_rng(0)
    A, B = F.random_array(rng, (90, 80)), F.random_array(rng, (80, 70))
    exact = (A.astype(object) @ B.astype(object)) % 101
    assert np.array_equal(la.matmul(F, A, B), exact.astype(np.int64))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9), st.integers(0, 2**32))
def test_compiled_and_numpy_kernels_agree(m, n, seed):
    p = 7
    rng = np.random.default_rng(seed)
    A = (rng.integers(0, p, (m, n)) * (rng.random((m, n)) < 0.5)).astype(np.int64)
    ref = A.copy()
    piv_ref = _kernels_py.rref_modp(ref, p)
    try:
        from gorsum import _kernels
    except ImportError:  # pragma: no cover
        pytest.skip("compiled kernels not built")
    got = A.copy()
    assert _kernels.rref_modp(got, p) == piv_ref
    assert np.array_equal(got, ref)
    assert _kernels.rank_modp(A.copy(), p) == _kernels_py.rank_modp(A.copy(), p) == len(piv_ref)
    assert _kernels.echelon_pivots_modp(A.copy(), p) == _kernels_py.echelon_pivots_modp(A.copy(), p) == piv_ref


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32))
def test_rational_rank_matches_modular_rank_generically(m, n, seed):
    rng = np.random.default_rng(seed)
    ints = rng.integers(-3, 4, (m, n))
    r_q = la.rank(QQ, QQ.array(ints))
    r_p = la.rank(GF(1_000_003), GF(1_000_003).normalize(ints.astype(np.int64)))
    assert r_p <= r_q


def test_backend_switch_round_trip():
    before = la.BACKEND
    la.use_backend("numpy")
    try:
        assert la.rank(GF(5), GF(5).array([[1, 2], [2, 4]])) == 1
    finally:
        la.use_backend(before)
    assert la.BACKEND == before
