"""Fiber products, connected sums, amalgamated duplications and socle splitting.

Everything is computed on structure constants: the fiber product is a
subalgebra of ``R x S`` (a kernel computation) and the connected sum is a
quotient of it.  No elimination orders are involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import linalg as la
from .algebra import (AlgebraMorphism, FDAlgebra, FDModule, ModuleMorphism, NotModuleLinear,
                      UnitIdeal, augmentation, bilinear_products, dual_canonical_module,
                      module_hom_space, quotient, regrade, residue_field)


class SumError(ValueError):
    pass


class TargetMismatch(SumError):
    pass


class NotSurjective(SumError):
    pass


class DiagramNotCommutative(SumError):
    pass


class IotaNotModuleLinear(SumError):
    pass


class IotaNotInjective(SumError):
    pass


class DiagonalNotIdeal(SumError):
    pass


class NoCompatibleIdentification(SumError):
    pass


class NotGorensteinInput(SumError):
    pass


class AInvariantMismatch(SumError):
    pass


class ZeroKernel(SumError):
    pass


class WNotInSocleImage(SumError):
    pass


def same_algebra(A: FDAlgebra, B: FDAlgebra) -> bool:
    return A is B or (A.field == B.field and A.dim == B.dim and A.degrees == B.degrees
                      and np.array_equal(A.mult, B.mult))


def _direct_product_mult(R: FDAlgebra, S: FDAlgebra) -> np.ndarray:
    F = R.field
    a, b = R.dim, S.dim
    M = F.zeros((a + b, a + b, a + b))
    M[:a, :a, :a] = R.mult
    M[a:, a:, a:] = S.mult
    return M


def algebra_on_subspace(F, ambient_mult: np.ndarray, basis: np.ndarray, degrees=None, labels=None) -> FDAlgebra:
    """Subalgebra spanned by ``basis`` (first column must be the ambient unit)."""
    sub = la.Subspace(F, basis, independent=True)
    n = basis.shape[1]
    prods = bilinear_products(F, ambient_mult, basis)  # (n, n, N)
    try:
        coords = sub.coordinates(prods.reshape(n * n, -1).T)
    except la.NotInSubspace as exc:
        raise SumError("subspace is not closed under multiplication") from exc
    mult = np.ascontiguousarray(coords.T.reshape(n, n, n))
    return FDAlgebra(F, mult, degrees=degrees, labels=labels), sub


def _graded_kernel(F, M: np.ndarray, col_degrees):
    """Nullspace of a degree-preserving map, one homogeneous block at a time."""
    n = M.shape[1]
    if col_degrees is None:
        return la.nullspace(F, M), None
    out, degs = [], []
    cd = np.array(col_degrees)
    for d in sorted(set(col_degrees)):
        cols = np.flatnonzero(cd == d)
        N = la.nullspace(F, np.ascontiguousarray(M[:, cols]))
        for j in range(N.shape[1]):
            v = F.zeros(n)
            v[cols] = N[:, j]
            out.append(v)
            degs.append(d)
    if not out:
        return F.zeros((n, 0)), []
    return np.stack(out, axis=1), degs


def _pair_label(R, S, v):
    a = R.dim
    nr, ns = np.flatnonzero(v[:a] != 0), np.flatnonzero(v[a:] != 0)
    if len(nr) <= 1 and len(ns) <= 1 and all(v[i] == 1 for i in nr) and all(v[a + j] == 1 for j in ns):
        left = R.labels[nr[0]] if len(nr) else "0"
        right = S.labels[ns[0]] if len(ns) else "0"
        return f"({left},{right})"
    return None


@dataclass
class FiberProduct:
    P: FDAlgebra
    rho: AlgebraMorphism
    sigma: AlgebraMorphism
    R: FDAlgebra
    S: FDAlgebra
    T: FDAlgebra
    eR: AlgebraMorphism
    eS: AlgebraMorphism
    embedding: la.Subspace  # P inside R (+) S

    def element(self, r, s) -> np.ndarray:
        """P-coordinates of the pair ``(r, s)``; raises if it is not in P."""
        F = self.P.field
        v = np.concatenate([la.coerce(F, r), la.coerce(F, s)])
        return self.embedding.coordinates(v)


def fiber_product(eR: AlgebraMorphism, eS: AlgebraMorphism) -> FiberProduct:
    """``R x_T S = {(x, y) : eR(x) = eS(y)}`` with its two projections."""
    R, S, T = eR.source, eS.source, eR.target
    if not same_algebra(eR.target, eS.target):
        raise TargetMismatch("maps have different targets")
    if not eR.is_surjective or not eS.is_surjective:
        raise NotSurjective("fiber products need surjections onto T")
    F = R.field
    a, b = R.dim, S.dim
    # maximal-ideal part: kernel of (eR, -eS) on m_R (+) m_S
    M = np.concatenate([eR.matrix[:, 1:], F.normalize(-eS.matrix[:, 1:])], axis=1)
    graded = R.graded and S.graded and T.graded
    col_deg = R.degrees[1:] + S.degrees[1:] if graded else None
    K, kdeg = _graded_kernel(F, M, col_deg)
    basis = F.zeros((a + b, 1 + K.shape[1]))
    basis[0, 0] = F.one
    basis[a, 0] = F.one
    basis[1:a, 1:] = K[: a - 1]
    basis[a + 1:, 1:] = K[a - 1:]
    degrees = [0] + kdeg if graded else None
    labels = [_pair_label(R, S, basis[:, j]) or f"p{j}" for j in range(basis.shape[1])]
    labels[0] = "1"
    P, sub = algebra_on_subspace(F, _direct_product_mult(R, S), basis, degrees=degrees, labels=labels)
    rho = AlgebraMorphism(P, R, basis[:a], check=False)
    sigma = AlgebraMorphism(P, S, basis[a:], check=False)
    if P.dim + T.dim != R.dim + S.dim:
        raise SumError("length identity for the fiber product failed")
    return FiberProduct(P, rho, sigma, R, S, T, eR, eS, sub)


@dataclass
class ConnectedSumDiagram:
    R: FDAlgebra
    S: FDAlgebra
    T: FDAlgebra
    V: FDModule
    eR: AlgebraMorphism
    eS: AlgebraMorphism
    iR: np.ndarray  # R.dim x V.dim
    iS: np.ndarray


@dataclass
class SumResult:
    fiber: FiberProduct
    Q: FDAlgebra | None
    kappa: AlgebraMorphism | None
    diagram: ConnectedSumDiagram | None = None
    V_in_P: np.ndarray | None = None
    I_basis: np.ndarray | None = None
    J_basis: np.ndarray | None = None
    notes: list = field(default_factory=list)

    @property
    def P(self):
        return self.fiber.P

    @property
    def rho(self):
        return self.fiber.rho

    @property
    def sigma(self):
        return self.fiber.sigma

    @property
    def is_zero(self) -> bool:
        return self.Q is None


def validate_diagram(d: ConnectedSumDiagram) -> None:
    F = d.R.field
    if not (same_algebra(d.eR.target, d.T) and same_algebra(d.eS.target, d.T)):
        raise TargetMismatch("augmentation targets differ from T")
    if not same_algebra(d.V.algebra, d.T):
        raise TargetMismatch("V must be a T-module")
    if not d.eR.is_surjective or not d.eS.is_surjective:
        raise NotSurjective("maps onto T must be surjective")
    for iota, A, e, nm in ((d.iR, d.R, d.eR, "iota_R"), (d.iS, d.S, d.eS, "iota_S")):
        try:
            f = ModuleMorphism(d.V, A.regular_module(), iota, base_map=_rebase(e, d.V.algebra))
        except NotModuleLinear as exc:
            raise IotaNotModuleLinear(f"{nm} is not linear over {A!r} acting through T") from exc
        if not f.is_injective:
            raise IotaNotInjective(f"{nm} is not injective")
    if not np.array_equal(la.matmul(F, d.eR.matrix, d.iR), la.matmul(F, d.eS.matrix, d.iS)):
        raise DiagramNotCommutative("eR o iota_R != eS o iota_S")


def _rebase(e: AlgebraMorphism, T: FDAlgebra) -> AlgebraMorphism:
    return e if e.target is T else AlgebraMorphism(e.source, T, e.matrix, check=False)


def connected_sum(d: ConnectedSumDiagram, validate: bool = True) -> SumResult:
    """``(R x_T S) / {(iR v, iS v)}`` after validating the diagram."""
    if validate:
        validate_diagram(d)
    fp = fiber_product(d.eR, d.eS)
    F = fp.P.field
    D_amb = np.concatenate([la.coerce(F, d.iR), la.coerce(F, d.iS)], axis=0)
    D = fp.embedding.coordinates(D_amb)
    if D.shape[1] and la.rank(F, D) < D.shape[1]:
        raise IotaNotInjective("diagonal map is not injective")
    P = fp.P
    span = P.ideal_span(D)
    if span.shape[1] != la.rank(F, D):
        raise DiagonalNotIdeal("diagonal image of V is not an ideal of the fiber product")
    I_basis = la.nullspace(F, d.eR.matrix)
    J_basis = la.nullspace(F, d.eS.matrix)
    try:
        Q, kappa = quotient(P, D)
    except UnitIdeal:
        res = SumResult(fp, None, None, d, D, I_basis, J_basis, ["connected sum is the zero ring"])
        return res
    if Q.dim + d.T.dim + d.V.dim != d.R.dim + d.S.dim:
        raise SumError("length identity for the connected sum failed")
    return SumResult(fp, Q, kappa, d, D, I_basis, J_basis)


def _find_injective(F, homs, n, rng, tries=64):
    for h in homs:
        if la.rank(F, h) == n:
            return h
    if not homs:
        return None
    for _ in range(tries):
        c = F.random_array(rng, len(homs), bound=3)
        h = F.normalize(sum(ci * hi for ci, hi in zip(c, homs)))
        if la.rank(F, h) == n:
            return h
    return None


def graded_hom_space(M: FDModule, N: FDModule, base_map=None) -> list:
    """Degree-preserving part of ``Hom(M, N)`` (both modules graded)."""
    F = M.field
    homs = module_hom_space(M, N, base_map=base_map)
    if not homs or M.degrees is None or N.degrees is None:
        return homs
    bad = np.array([[N.degrees[i] != M.degrees[j] for j in range(M.dim)] for i in range(N.dim)])
    if not bad.any():
        return homs
    H = np.stack([h.ravel() for h in homs], axis=1)
    C = la.nullspace(F, np.ascontiguousarray(H[bad.ravel()]))
    out = []
    for j in range(C.shape[1]):
        out.append(F.normalize(H @ C[:, j]).reshape(N.dim, M.dim))
    return out


def gorenstein_connected_sum(R: FDAlgebra, S: FDAlgebra, T: FDAlgebra, eR: AlgebraMorphism,
                             eS: AlgebraMorphism, graded: bool | None = None, seed: int = 0):
    """Connected sum with ``V`` the canonical module of ``T`` and images the annihilators.

    Returns ``(SumResult, ConnectedSumDiagram)``; the result is Gorenstein.
    """
    F = R.field
    if not R.is_gorenstein or not S.is_gorenstein:
        raise NotGorensteinInput("R and S must be Gorenstein")
    if not same_algebra(eR.target, T) or not same_algebra(eS.target, T):
        raise TargetMismatch("maps must land in T")
    eR, eS = _rebase(eR, T), _rebase(eS, T)
    if la.rank(F, eR.matrix) == R.dim or la.rank(F, eS.matrix) == S.dim:
        raise ZeroKernel("the kernels of eR and eS must be nonzero")
    all_graded = R.graded and S.graded and T.graded
    if graded is None:
        graded = all_graded
    if graded:
        if not all_graded:
            raise AInvariantMismatch("graded construction needs graded inputs")
        if R.a_invariant != S.a_invariant:
            raise AInvariantMismatch(
                f"graded identification refused: a(R) = {R.a_invariant} != a(S) = {S.a_invariant}")
        V = dual_canonical_module(T, shift=R.a_invariant)
    else:
        V = dual_canonical_module(T)
        V.degrees = None
    rng = np.random.default_rng(seed)
    homs = []
    for A, e in ((R, eR), (S, eS)):
        hs = graded_hom_space(V, A.regular_module(), base_map=e) if graded \
            else module_hom_space(V, A.regular_module(), base_map=e)
        if _find_injective(F, hs, V.dim, rng) is None:
            raise NoCompatibleIdentification(f"no injective T-linear map from V into {A!r}")
        homs.append(hs)
    hR, hS = homs
    # pairs (iota_R, iota_S) with eR iota_R = eS iota_S form the kernel of this map
    cols = [la.matmul(F, eR.matrix, h).ravel() for h in hR]
    cols += [F.normalize(-la.matmul(F, eS.matrix, h)).ravel() for h in hS]
    N = la.nullspace(F, np.stack(cols, axis=1))
    iR = iS = None
    for j in list(range(N.shape[1])) + [None] * 64:
        c = N[:, j] if j is not None else F.normalize(N @ F.random_array(rng, N.shape[1], bound=50))
        a = F.normalize(sum(ci * h for ci, h in zip(c[: len(hR)], hR)))
        b = F.normalize(sum(ci * h for ci, h in zip(c[len(hR):], hS)))
        if la.rank(F, a) == V.dim and la.rank(F, b) == V.dim:
            iR, iS = a, b
            break
    if iR is None:
        raise NoCompatibleIdentification("no injective pair of maps from V makes the diagram commute")
    d = ConnectedSumDiagram(R, S, T, V, eR, eS, iR, iS)
    res = connected_sum(d)
    if res.Q is None or not res.Q.is_gorenstein:
        raise SumError("Gorenstein connected sum is not Gorenstein")
    return res, d


def connected_sum_over_k(R: FDAlgebra, S: FDAlgebra, graded: bool | None = None,
                         align: bool = True):
    """``R #_k S`` for Gorenstein ``R``, ``S`` of positive length.

    With ``align`` and graded inputs of different socle degrees, both gradings
    are rescaled so the socles meet in one degree; the underlying algebras are
    unchanged and the sum stays graded, which keeps resolutions sliced.  The
    diagram then refers to the rescaled copies.
    """
    if align and graded is None and R.graded and S.graded and R.dim > 1 and S.dim > 1:
        a, b = R.a_invariant, S.a_invariant
        if a != b:
            g = gcd(a, b)
            R, S = regrade(R, b // g), regrade(S, a // g)
    k = residue_field(R.field)
    return gorenstein_connected_sum(R, S, k, augmentation(R, k), augmentation(S, k), graded=graded)


def amalgamated_duplication(R: FDAlgebra, I_gens) -> FiberProduct:
    """``R x_{R/I} R`` for a proper ideal ``I``."""
    RI, pi = quotient(R, I_gens)
    return fiber_product(pi, pi)


@dataclass
class SocleSplit:
    B: FDAlgebra
    C: FDAlgebra
    iso: AlgebraMorphism  # Q -> B x_k C
    fiber: FiberProduct
    W_lifts: np.ndarray


def split_socle(Q: FDAlgebra, W_basis=None) -> SocleSplit:
    """``Q ~ B x_k C`` with ``C`` of square-zero maximal ideal of dimension ``dim W``."""
    F = Q.field
    soc = Q.socle_basis
    soc = soc[:, np.any(soc[1:] != 0, axis=0)] if Q.dim > 1 else soc[:, :0]
    mm = Q.mm_basis
    k = mm.shape[1]
    if W_basis is None:
        piv = la.independent_columns(F, np.concatenate([mm, soc], axis=1)) if soc.shape[1] else list(range(k))
        X = soc[:, [c - k for c in piv if c >= k]]
    else:
        W = la.coerce(F, W_basis)
        if W.ndim == 1:
            W = W.reshape(-1, 1)
        sol = la.solve(F, np.concatenate([soc, mm], axis=1), W) if W.shape[1] else F.zeros((0, 0))
        if sol is None:
            raise WNotInSocleImage("W is not contained in (soc Q + m^2)/m^2")
        X = la.matmul(F, soc, sol[: soc.shape[1]]) if W.shape[1] else F.zeros((Q.dim, 0))
        if la.rank(F, np.concatenate([mm, X], axis=1)) != k + X.shape[1]:
            raise WNotInSocleImage("W basis is not independent modulo m^2")
    M = np.concatenate([mm, X, Q.maximal_ideal_basis()], axis=1)
    piv = la.independent_columns(F, M)
    off = k + X.shape[1]
    Y = Q.maximal_ideal_basis()[:, [c - off for c in piv if c >= off]]
    B, piB = quotient(Q, X)
    C, piC = quotient(Q, Y)
    fp = fiber_product(augmentation(B), augmentation(C))
    coords = fp.embedding.coordinates(np.concatenate([piB.matrix, piC.matrix], axis=0))
    iso = AlgebraMorphism(Q, fp.P, coords)
    if not (iso.is_injective and iso.is_surjective):
        raise SumError("socle splitting map is not bijective")
    return SocleSplit(B, C, iso, fp, X)
