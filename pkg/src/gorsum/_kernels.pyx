# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled row reduction over GF(p).

Entries must already be reduced into ``[0, p)`` and ``p < 2**24`` so that
``a + (p - f) * b`` never leaves int64.
"""

cimport cython
import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef i64 _inv(i64 a, i64 p):
    cdef i64 t = 0, new_t = 1, r = p, new_r = a, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


def rref_modp(i64[:, ::1] A, i64 p):
    """Reduce ``A`` in place to reduced row echelon form; return pivot columns."""
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k, piv, nnz
    cdef i64 inv, f, nf, tmp
    cdef Py_ssize_t[::1] nzj = np.empty(max(n, 1), dtype=np.intp)
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        inv = _inv(A[r, c], p)
        if inv != 1:
            for j in range(c, n):
                if A[r, j] != 0:
                    A[r, j] = (A[r, j] * inv) % p
        nnz = 0
        for j in range(c, n):
            if A[r, j] != 0:
                nzj[nnz] = j
                nnz += 1
        for i in range(m):
            if i == r:
                continue
            f = A[i, c]
            if f == 0:
                continue
            nf = p - f
            for k in range(nnz):
                j = nzj[k]
                A[i, j] = (A[i, j] + nf * A[r, j]) % p
        pivots.append(c)
        r += 1
    return pivots


def echelon_pivots_modp(i64[:, ::1] A, i64 p):
    """Pivot columns of ``A`` (destroyed) by forward elimination only."""
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k, piv, nnz
    cdef i64 inv, f, nf, tmp
    cdef Py_ssize_t[::1] nzj = np.empty(max(n, 1), dtype=np.intp)
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        inv = _inv(A[r, c], p)
        nnz = 0
        for j in range(c, n):
            if A[r, j] != 0:
                A[r, j] = (A[r, j] * inv) % p
                nzj[nnz] = j
                nnz += 1
        for i in range(r + 1, m):
            f = A[i, c]
            if f == 0:
                continue
            nf = p - f
            for k in range(nnz):
                j = nzj[k]
                A[i, j] = (A[i, j] + nf * A[r, j]) % p
        pivots.append(c)
        r += 1
    return pivots


def rank_modp(i64[:, ::1] A, i64 p):
    """Rank of ``A`` (destroyed) by forward elimination only."""
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 inv, f, nf, tmp
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        inv = _inv(A[r, c], p)
        for j in range(c, n):
            if A[r, j] != 0:
                A[r, j] = (A[r, j] * inv) % p
        for i in range(r + 1, m):
            f = A[i, c]
            if f == 0:
                continue
            nf = p - f
            for j in range(c, n):
                if A[r, j] != 0:
                    A[i, j] = (A[i, j] + nf * A[r, j]) % p
        r += 1
    return r
