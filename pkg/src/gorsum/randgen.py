"""Random artinian graded instances for the property suites.

All generators take a ``numpy.random.Generator`` and are deterministic given
its state.  Defaults keep lengths at desk scale (at most 12).
"""

from __future__ import annotations

from itertools import combinations_with_replacement

import numpy as np

from . import linalg as la
from .algebra import (AlgebraMorphism, FDAlgebra, algebra_from_presentation, quotient)
from .fields import Field
from .poly import PolyRing

VARS = ("x", "y", "z", "w")


def _monomials_of_degree(n: int, d: int):
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def random_graded_algebra(F: Field, rng, nvars: int | None = None, max_length: int = 12,
                          min_length: int = 2, max_tries: int = 200):
    """``k[x, y, ...] / (pure powers + random monomials + random binomials)``."""
    for _ in range(max_tries):
        n = nvars or int(rng.integers(1, 3))
        ring = PolyRing(F, VARS[:n])
        rels = []
        for i in range(n):
            e = [0] * n
            e[i] = int(rng.integers(2, 6))
            rels.append(ring.monomial(e))
        if n > 1:
            for _ in range(int(rng.integers(0, 3))):
                d = int(rng.integers(2, 5))
                rels.append(ring.monomial(_pick(rng, _monomials_of_degree(n, d))))
            for _ in range(int(rng.integers(0, 3))):
                d = int(rng.integers(2, 4))
                ms = _monomials_of_degree(n, d)
                i, j = rng.choice(len(ms), size=2, replace=False)
                c = F(int(rng.integers(1, 7)) * (1 if rng.integers(0, 2) else -1))
                rels.append(ring.monomial(ms[i]) + ring.monomial(ms[j], c))
        A, pres = algebra_from_presentation(ring, rels)
        if min_length <= A.dim <= max_length:
            return A
    raise RuntimeError("could not draw an algebra in the requested length range")


def _pick(rng, seq):
    return seq[int(rng.integers(0, len(seq)))]


def truncated_polynomial_algebra(F: Field, nvars: int, degree: int) -> FDAlgebra:
    """``k[x_1..x_n] / (x_1..x_n)^(degree+1)``."""
    ring = PolyRing(F, VARS[:nvars])
    rels = [ring.monomial(m) for m in _monomials_of_degree(nvars, degree + 1)]
    return algebra_from_presentation(ring, rels)[0]


def gorenstein_from_functional(B: FDAlgebra, phi) -> FDAlgebra:
    """``B / ann(phi)`` for a linear functional ``phi`` on ``B``; always Gorenstein."""
    F = B.field
    phi = la.coerce(F, phi)
    G = F.normalize(np.tensordot(B.mult, phi, axes=([2], [0])))  # G[i, j] = phi(e_i e_j)
    ann = la.nullspace(F, G)
    if ann.shape[1] == 0:
        return B
    return quotient(B, ann)[0]


def random_gorenstein(F: Field, rng, nvars: int | None = None, max_length: int = 12,
                      min_length: int = 2, min_edim: int = 1, socle_degree: int | None = None,
                      max_tries: int = 200) -> FDAlgebra:
    """Graded Gorenstein algebra from a random top-degree functional (inverse system)."""
    for _ in range(max_tries):
        n = nvars or int(rng.integers(1, 4))
        d = socle_degree or int(rng.integers(1, 5))
        if n == 1 and d + 1 < min_length:
            d = min_length - 1
        B = truncated_polynomial_algebra(F, n, d)
        phi = F.zeros(B.dim)
        top = [i for i, deg in enumerate(B.degrees) if deg == d]
        phi[top] = F.random_array(rng, len(top), bound=5)
        if not np.any(phi != 0):
            continue
        Q = gorenstein_from_functional(B, phi)
        if min_length <= Q.dim <= max_length and Q.edim >= min_edim and Q.a_invariant == d:
            return Q
    raise RuntimeError("could not draw a Gorenstein algebra with the requested shape")


def random_ideal_generators(A: FDAlgebra, rng, count: int | None = None, min_degree: int = 1):
    """A few random homogeneous elements of the maximal ideal."""
    F = A.field
    count = count if count is not None else int(rng.integers(1, 3))
    degs = sorted({d for d in A.degrees if d >= min_degree})
    cols = []
    for _ in range(count):
        if not degs:
            break
        d = _pick(rng, degs)
        v = A.zero()
        idx = [i for i, e in enumerate(A.degrees) if e == d]
        v[idx] = F.random_array(rng, len(idx), bound=5)
        cols.append(v)
    if not cols:
        return F.zeros((A.dim, 0))
    return np.stack(cols, axis=1)


def random_surjection(A: FDAlgebra, rng, count: int | None = None) -> AlgebraMorphism:
    """``A -> A / I`` for a random homogeneous ideal ``I`` (possibly zero)."""
    gens = random_ideal_generators(A, rng, count)
    return quotient(A, gens)[1]


def map_from_linear_part(R: FDAlgebra, T: FDAlgebra, lin) -> AlgebraMorphism:
    """Algebra map ``R -> T`` for ``T`` with square-zero maximal ideal.

    ``lin`` is a matrix sending the degree-one basis vectors of ``R`` into the
    degree-one part of ``T``; everything of degree at least two goes to zero.
    """
    F = R.field
    M = F.zeros((T.dim, R.dim))
    M[0, 0] = F.one
    r1 = [i for i, d in enumerate(R.degrees) if d == 1]
    t1 = [i for i, d in enumerate(T.degrees) if d == 1]
    M[np.ix_(t1, r1)] = la.coerce(F, lin)
    return AlgebraMorphism(R, T, M)


def square_zero_algebra(F: Field, n: int) -> FDAlgebra:
    """``k[z_1..z_n] / (z)^2`` (``k`` itself for ``n = 0``)."""
    if n == 0:
        from .algebra import residue_field

        return residue_field(F)
    return truncated_polynomial_algebra(F, n, 1)


def random_map_to_square_zero(R: FDAlgebra, T: FDAlgebra, rng, max_tries: int = 50):
    F = R.field
    r1 = sum(1 for d in R.degrees if d == 1)
    t1 = sum(1 for d in T.degrees if d == 1)
    if t1 > r1:
        return None
    for _ in range(max_tries):
        lin = F.random_array(rng, (t1, r1), bound=5)
        phi = map_from_linear_part(R, T, lin)
        if phi.is_surjective:
            return phi
    return None


def random_gorenstein_diagram(F: Field, rng, same_a: bool | None = True, max_length: int = 10,
                              t_dim: int | None = None, max_tries: int = 100):
    """``(R, S, T, eR, eS)`` with ``R``, ``S`` Gorenstein and ``T`` of square-zero maximal ideal.

    ``same_a=True`` forces ``a(R) = a(S)``, ``False`` forces them to differ,
    ``None`` leaves it to chance.
    """
    for _ in range(max_tries):
        t = t_dim if t_dim is not None else int(rng.integers(0, 3))
        T = square_zero_algebra(F, t)
        R = random_gorenstein(F, rng, max_length=max_length, min_length=max(2, t + 1), min_edim=max(1, t))
        if same_a is True:
            S = random_gorenstein(F, rng, max_length=max_length, min_length=max(2, t + 1), min_edim=max(1, t),
                                  socle_degree=R.a_invariant)
        else:
            S = random_gorenstein(F, rng, max_length=max_length, min_length=max(2, t + 1), min_edim=max(1, t))
            if same_a is False and S.a_invariant == R.a_invariant:
                continue
        eR = random_map_to_square_zero(R, T, rng)
        eS = random_map_to_square_zero(S, T, rng)
        if eR is None or eS is None:
            continue
        if eR.rank == R.dim or eS.rank == S.dim:
            continue  # kernels must be nonzero
        return R, S, T, eR, eS
    raise RuntimeError("could not draw a Gorenstein diagram")


def random_common_quotient(F: Field, rng, max_length: int = 12, max_tries: int = 100):
    """``(R, S, T, eR, eS)`` with ``R = R0/J'``, ``S = R0/J''``, ``T = R0/J``, ``J', J'' in J``."""
    for _ in range(max_tries):
        R0 = random_graded_algebra(F, rng, max_length=max_length, min_length=3)
        Jg = random_ideal_generators(R0, rng, count=int(rng.integers(1, 3)))
        J = R0.ideal_span(Jg)
        if J.shape[1] == 0 or J.shape[1] >= R0.dim - 1:
            continue
        T, piT = quotient(R0, J)
        out = []
        for _ in range(2):
            c = int(rng.integers(0, 3))
            sub = F.normalize(J @ F.random_array(rng, (J.shape[1], c), bound=5)) if c else F.zeros((R0.dim, 0))
            sub = _homogeneous_parts(R0, sub)
            A, piA = quotient(R0, sub)
            e = AlgebraMorphism(A, T, la.matmul(F, piT.matrix, piA.section))
            out.append((A, e))
        (R, eR), (S, eS) = out
        return R, S, T, eR, eS
    raise RuntimeError("could not draw a common quotient")


def _homogeneous_parts(A: FDAlgebra, V):
    """Split each column into its homogeneous components (keeps ideals graded)."""
    F = A.field
    cols = []
    deg = np.array(A.degrees)
    for j in range(V.shape[1]):
        for d in sorted(set(A.degrees)):
            w = V[:, j].copy()
            w[deg != d] = 0
            if np.any(w != 0):
                cols.append(w)
    return np.stack(cols, axis=1) if cols else F.zeros((A.dim, 0))
