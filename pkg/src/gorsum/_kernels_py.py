"""Numpy implementation of the GF(p) row-reduction kernels.

Same contract as the compiled ``gorsum._kernels`` module: int64, C-contiguous
input with entries in ``[0, p)``, modified in place.
"""

import numpy as np


def rref_modp(A: np.ndarray, p: int) -> list:
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i], c:] = A[[i, r], c:]
        inv = pow(int(A[r, c]), -1, p)
        if inv != 1:
            A[r, c:] = A[r, c:] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows, c:] = (A[rows, c:] - np.outer(col[rows], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return pivots


def rank_modp(A: np.ndarray, p: int) -> int:
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i], c:] = A[[i, r], c:]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = A[r, c:] * inv % p
        col = A[r + 1:, c]
        rows = r + 1 + np.flatnonzero(col)
        if rows.size:
            A[rows, c:] = (A[rows, c:] - np.outer(A[rows, c], A[r, c:])) % p
        r += 1
    return r


def echelon_pivots_modp(A: np.ndarray, p: int) -> list:
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i], c:] = A[[i, r], c:]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = A[r, c:] * inv % p
        rows = r + 1 + np.flatnonzero(A[r + 1:, c])
        if rows.size:
            A[rows, c:] = (A[rows, c:] - np.outer(A[rows, c], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return pivots
