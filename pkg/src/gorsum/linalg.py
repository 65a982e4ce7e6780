"""Dense exact linear algebra over QQ and GF(p).

Matrices are numpy arrays normalized for their field (see ``fields``);
vectors are columns.  Row reduction over GF(p) with int64 storage runs in the
compiled ``_kernels`` extension when it is importable, otherwise in the numpy
fallback ``_kernels_py``.  ``GORSUM_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import os
from fractions import Fraction

import numpy as np

from .fields import Field, FieldError

if os.environ.get("GORSUM_PURE"):
    from . import _kernels_py as _kern

    BACKEND = "numpy"
else:
    try:
        from . import _kernels as _kern

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        from . import _kernels_py as _kern

        BACKEND = "numpy"


class NotInSubspace(ValueError):
    pass


def use_backend(name: str):
    """Switch the GF(p) kernel at runtime (``"cython"`` or ``"numpy"``)."""
    global _kern, BACKEND
    if name == "numpy":
        from . import _kernels_py as mod
    elif name == "cython":
        from . import _kernels as mod
    else:
        raise ValueError(name)
    _kern, BACKEND = mod, name


def coerce(F: Field, A) -> np.ndarray:
    """Return ``A`` as a fresh 2-D (or 1-D) array over ``F``."""
    A = np.asarray(A)
    if F.dtype is object:
        if A.dtype != object:
            return F.array(A)
        if F.characteristic == 0:
            return A.copy()
        if any(isinstance(x, Fraction) for x in A.ravel()):
            raise FieldError(f"field mismatch: rational entries passed to {F}")
        return F.array(A)
    if A.dtype == object:
        if any(isinstance(x, Fraction) for x in A.ravel()):
            raise FieldError(f"field mismatch: rational entries passed to {F}")
        A = A.astype(np.int64)
    if A.dtype == np.int64 and A.size and A.min() >= 0 and A.max() < F.p:
        return np.array(A, dtype=np.int64, order="C")
    return np.ascontiguousarray(A % F.p, dtype=np.int64)


def _fast(F: Field) -> bool:
    return F.dtype is not object


def _rref_generic(F: Field, A: np.ndarray):
    m, n = A.shape
    rows = [list(r) for r in A]
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        pr = rows[r]
        if inv != 1:
            for j in range(c, n):
                if pr[j] != 0:
                    pr[j] = F.mul(pr[j], inv)
        nzj = [j for j in range(c, n) if pr[j] != 0]
        for i in range(m):
            if i == r:
                continue
            f = rows[i][c]
            if f == 0:
                continue
            ri = rows[i]
            for j in nzj:
                ri[j] = F.sub(ri[j], F.mul(f, pr[j]))
        pivots.append(c)
        r += 1
    out = np.empty((m, n), dtype=object)
    for i in range(m):
        for j in range(n):
            out[i, j] = rows[i][j]
    return out, pivots


def rref(F: Field, A, overwrite: bool = False):
    """Reduced row echelon form and pivot columns of ``A``.

    With ``overwrite`` a reduced, writable matrix over ``F`` is reduced in place.
    """
    if not (overwrite and _fast(F) and A.dtype == np.int64 and A.flags.c_contiguous and A.flags.writeable):
        A = coerce(F, A)
    if A.ndim != 2:
        raise ValueError("rref expects a matrix")
    if A.size == 0:
        return A, []
    if _fast(F):
        pivots = _kern.rref_modp(A, F.p)
        return A, list(pivots)
    return _rref_generic(F, A)


def rank(F: Field, A) -> int:
    A = coerce(F, A)
    if A.size == 0:
        return 0
    if _fast(F):
        return int(_kern.rank_modp(A, F.p))
    return len(_rref_generic(F, A)[1])


def nullspace(F: Field, A) -> np.ndarray:
    """Columns form a basis of ``{x : A x = 0}``."""
    A = coerce(F, A)
    m, n = A.shape
    if m == 0:
        return F.identity(n)
    R, pivots = rref(F, A)
    piv = set(pivots)
    free = [j for j in range(n) if j not in piv]
    N = F.zeros((n, len(free)))
    if free:
        N[free, np.arange(len(free))] = F.one
        if pivots:
            N[np.ix_(pivots, range(len(free)))] = F.normalize(-R[: len(pivots)][:, free])
    return N


def solve(F: Field, A, b):
    """Some ``x`` with ``A x = b``, or ``None`` when inconsistent.

    ``b`` may be a vector or a matrix of right-hand sides (all must be
    consistent for a solution to be returned).
    """
    A = coerce(F, A)
    b = coerce(F, b)
    vec = b.ndim == 1
    B = b.reshape(-1, 1) if vec else b
    m, n = A.shape
    if B.shape[0] != m:
        raise ValueError(f"dimension mismatch: {A.shape} vs {b.shape}")
    aug = np.concatenate([A, B], axis=1) if m else F.zeros((0, n + B.shape[1]))
    R, pivots = rref(F, aug)
    if any(pc >= n for pc in pivots):
        return None
    X = F.zeros((n, B.shape[1]))
    for r, pc in enumerate(pivots):
        X[pc, :] = R[r, n:]
    return X[:, 0] if vec else X


def inverse(F: Field, A) -> np.ndarray:
    A = coerce(F, A)
    n, m = A.shape
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    X = solve(F, A, F.identity(n))
    if X is None or rank(F, A) < n:
        raise ZeroDivisionError("matrix is singular")
    return X


def independent_columns(F: Field, A, overwrite: bool = False) -> list:
    """Indices of a maximal independent set of columns, greedy left to right."""
    if np.shape(A)[1] == 0:
        return []
    if _fast(F):
        if not (overwrite and A.dtype == np.int64 and A.flags.c_contiguous and A.flags.writeable):
            A = coerce(F, A)
        return list(_kern.echelon_pivots_modp(A, F.p)) if A.shape[0] else []
    return rref(F, A)[1]


def column_basis(F: Field, A) -> np.ndarray:
    A = coerce(F, A)
    return A[:, independent_columns(F, A)]


_EXACT_FLOAT = float(2 ** 53)


def matmul(F: Field, A, B) -> np.ndarray:
    A, B = np.asarray(A), np.asarray(B)
    if (F.dtype is not object and A.dtype == np.int64 and B.dtype == np.int64 and A.ndim == 2
            and A.shape[1] * float(F.p - 1) ** 2 < _EXACT_FLOAT and A.size * B.size > 4096):
        # every partial sum stays below 2^53, so BLAS in float64 is exact
        C = A.astype(np.float64) @ B.astype(np.float64)
        return np.fmod(C, F.p).astype(np.int64)
    return F.normalize(A @ B)


def is_zero(A) -> bool:
    A = np.asarray(A)
    return not A.size or not np.any(A != 0)


class Subspace:
    """A subspace of ``F^n`` given by independent basis columns.

    Coordinates of members are recovered through a left inverse built from a
    set of pivot rows; membership is always re-verified.
    """

    def __init__(self, F: Field, basis, ambient: int | None = None, independent=False):
        basis = coerce(F, basis)
        if basis.ndim == 1:
            basis = basis.reshape(-1, 1)
        if ambient is None:
            ambient = basis.shape[0]
        if basis.shape[1] and not independent:
            basis = column_basis(F, basis)
        self.F = F
        self.ambient = ambient
        self.basis = basis if basis.shape[1] else F.zeros((ambient, 0))
        self._rows = None
        self._left = None

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def _prepare(self):
        if self._rows is None:
            _, rows = rref(self.F, self.basis.T.copy()) if self.dim else (None, [])
            self._rows = list(rows)
            if self.dim:
                self._left = inverse(self.F, self.basis[self._rows, :])

    def coordinates(self, X) -> np.ndarray:
        """Coordinates of the column(s) ``X`` in this basis."""
        X = coerce(self.F, X)
        vec = X.ndim == 1
        X2 = X.reshape(-1, 1) if vec else X
        self._prepare()
        if self.dim == 0:
            if not is_zero(X2):
                raise NotInSubspace("vector is not in the zero subspace")
            C = self.F.zeros((0, X2.shape[1]))
        else:
            C = matmul(self.F, self._left, X2[self._rows, :])
            if not np.array_equal(matmul(self.F, self.basis, C), X2):
                raise NotInSubspace("vector is not in the subspace")
        return C[:, 0] if vec else C

    def contains(self, X) -> bool:
        try:
            self.coordinates(X)
        except NotInSubspace:
            return False
        return True
