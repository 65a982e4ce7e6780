"""Minimal free resolutions over finite-dimensional local algebras.

The resolution of ``M`` over ``A`` is built one syzygy at a time.  Free
modules ``A^b`` carry coordinates ``(g, c) -> g * n + c``; every subspace is
stored slice by slice, a slice being the coordinates of one internal degree
(filtered algebras use a single slice).  For each step:

* the minimal generators of the current syzygy ``K`` are a complement of
  ``m K`` inside ``K`` (only algebra generators of ``m`` are needed);
* the next syzygy is the kernel of the map sending the basis of the new free
  module onto those generators, computed slice by slice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import AlgebraMorphism, FDAlgebra, FDModule, algebra_as_module
from .series import TruncatedSeries, deviations_from_poincare, termwise_leq


class ResolutionError(RuntimeError):
    pass


class StepBudgetExceeded(ResolutionError):
    pass


class NegativeDeviation(ResolutionError):
    pass


class NotSurjective(ValueError):
    pass


DEFAULT_BUDGET = 20_000


class _Ambient:
    """A module with degree slices and action blocks between slices."""

    def slices(self) -> dict:
        raise NotImplementedError

    def act_block(self, t: int, d_from: int) -> np.ndarray | None:
        raise NotImplementedError

    def apply(self, F, t: int, d_from: int, X: np.ndarray) -> np.ndarray | None:
        """``e_t`` times the columns of ``X`` (slice ``d_from``), in the target slice."""
        blk = self.act_block(t, d_from)
        return None if blk is None else la.matmul(F, blk, X)


class _FreeAmbient(_Ambient):
    def __init__(self, A: FDAlgebra, adeg, gdeg):
        self.A = A
        self.n = A.dim
        self.adeg = adeg
        self.gdeg = list(gdeg)
        self.dim = len(self.gdeg) * self.n
        idx = {}
        for g, dg in enumerate(self.gdeg):
            for c in range(self.n):
                idx.setdefault(dg + adeg[c], []).append(g * self.n + c)
        self._slices = {d: np.array(v, dtype=np.int64) for d, v in idx.items()}
        self._cache = {}

    def slices(self):
        return self._slices

    def act_block(self, t, d_from):
        d_to = d_from + self.adeg[t]
        if d_from not in self._slices or d_to not in self._slices:
            return None
        key = (t, d_from)
        if key not in self._cache:
            src, dst = self._slices[d_from], self._slices[d_to]
            n = self.n
            same = (dst[:, None] // n) == (src[None, :] // n)
            vals = self.A.mult[t][src % n][:, dst % n].T  # e_t e_c -> coefficient at m
            blk = np.where(same, vals, 0)
            if self.A.field.dtype is object:
                blk = blk.astype(object)
            self._cache[key] = np.ascontiguousarray(blk)
        return self._cache[key]

    def _plan(self, t, d_from):
        """Per generator degree: positions in both slices and the small action matrix."""
        key = ("plan", t, d_from)
        if key in self._cache:
            return self._cache[key]
        d_to = d_from + self.adeg[t]
        plan = None
        if d_from in self._slices and d_to in self._slices:
            n, gdeg = self.n, np.asarray(self.gdeg)
            src, dst = self._slices[d_from], self._slices[d_to]
            gs, gd = gdeg[src // n], gdeg[dst // n]
            plan = []
            for delta in np.unique(gs):
                pf = np.flatnonzero(gs == delta)
                pt = np.flatnonzero(gd == delta)
                if not len(pt):
                    continue
                ng = len(np.unique(src[pf] // n))
                pf, pt = pf.reshape(ng, -1), pt.reshape(ng, -1)
                cf, ct = src[pf[0]] % n, dst[pt[0]] % n
                m = np.ascontiguousarray(self.A.mult[t][cf][:, ct].T)
                if not np.any(m != 0):
                    continue
                plan.append((pf, pt, m))
            plan = (len(dst), plan)
        self._cache[key] = plan
        return plan

    def apply(self, F, t, d_from, X):
        plan = self._plan(t, d_from)
        if plan is None:
            return None
        n_to, parts = plan
        Y = F.zeros((n_to, X.shape[1]))
        for pf, pt, m in parts:
            ng, nf = pf.shape
            # rows of X for these generators, as (component, generator * column)
            Xs = X[pf.ravel()].reshape(ng, nf, -1).transpose(1, 0, 2).reshape(nf, -1)
            Ys = la.matmul(F, m, Xs).reshape(m.shape[0], ng, -1).transpose(1, 0, 2)
            Y[pt.ravel()] = Ys.reshape(-1, X.shape[1])
        return Y


class _ModuleAmbient(_Ambient):
    def __init__(self, M: FDModule, adeg, mdeg):
        self.M = M
        self.adeg = adeg
        idx = {}
        for i, d in enumerate(mdeg):
            idx.setdefault(d, []).append(i)
        self._slices = {d: np.array(v, dtype=np.int64) for d, v in idx.items()}

    def slices(self):
        return self._slices

    def act_block(self, t, d_from):
        d_to = d_from + self.adeg[t]
        if d_from not in self._slices or d_to not in self._slices:
            return None
        return np.ascontiguousarray(self.M.action[t][np.ix_(self._slices[d_to], self._slices[d_from])])


@dataclass
class BettiTable:
    algebra: FDAlgebra
    module: FDModule
    betti: list
    generator_degrees: list = field(default_factory=list)
    syzygy_dims: list = field(default_factory=list)
    differentials: list = field(default_factory=list)

    def poincare(self, order: int | None = None) -> TruncatedSeries:
        return TruncatedSeries(self.betti, order)

    def graded_betti(self) -> list:
        """``[{degree: count}]`` per homological step (graded inputs only)."""
        out = []
        for gd in self.generator_degrees:
            row = {}
            for d in gd:
                row[d] = row.get(d, 0) + 1
            out.append(dict(sorted(row.items())))
        return out

    def differential(self, i: int) -> np.ndarray | None:
        """Matrix of ``d_i`` with entries as algebra coordinate vectors.

        Shape ``(b_{i-1}, b_i, dim A)``; ``d_0`` maps onto the module.  Only
        kept when the resolution was computed with ``keep_differentials``.
        """
        if i >= len(self.differentials):
            return None
        return self.differentials[i]


def _degrees_for(A: FDAlgebra, M: FDModule):
    """Internal degrees used for slicing (all zero unless both sides are graded)."""
    if A.graded and M.degrees is not None:
        return list(A.degrees), list(M.degrees)
    return [0] * A.dim, [0] * M.dim


def _complement_generators(F, mK: np.ndarray, K: np.ndarray) -> np.ndarray:
    """Columns of ``K`` completing a basis of ``mK`` to one of ``span K``."""
    if K.shape[1] == 0:
        return K
    if mK.shape[1] == 0:
        return K[:, la.independent_columns(F, K)]
    k = mK.shape[1]
    piv = la.independent_columns(F, np.concatenate([mK, K], axis=1), overwrite=True)
    return K[:, [c - k for c in piv if c >= k]]


def minimal_free_resolution(A: FDAlgebra, M: FDModule | None = None, steps: int = 6,
                            budget: int = DEFAULT_BUDGET, keep_differentials: bool = False) -> BettiTable:
    """Betti numbers ``b_0 .. b_steps`` of ``M`` (default: the residue field) over ``A``."""
    F = A.field
    if M is None:
        M = A.residue_module()
    if M.algebra is not A:
        raise ValueError("module is not over the given algebra")
    adeg, mdeg = _degrees_for(A, M)
    gens_m = A.generator_indices
    X: _Ambient = _ModuleAmbient(M, adeg, mdeg)
    K = {d: F.identity(len(idx)) for d, idx in X.slices().items()}
    betti, gdegs, syz, diffs = [], [], [], []
    for i in range(steps + 1):
        new_gens = {}
        for d in sorted(K):
            Kd = K[d]
            if Kd.shape[1] == 0:
                continue
            parts = []
            for t in gens_m:
                src = d - adeg[t]
                if src not in K or K[src].shape[1] == 0:
                    continue
                img = X.apply(F, t, src, K[src])
                if img is not None:
                    parts.append(img)
            mK = np.concatenate(parts, axis=1) if parts else F.zeros((Kd.shape[0], 0))
            G = _complement_generators(F, mK, Kd)
            if G.shape[1]:
                new_gens[d] = G
        gdeg = [d for d in sorted(new_gens) for _ in range(new_gens[d].shape[1])]
        b = len(gdeg)
        betti.append(b)
        gdegs.append(gdeg)
        syz.append(sum(k.shape[1] for k in K.values()))
        if keep_differentials:
            diffs.append(_differential_matrix(X, new_gens, gdeg, A))
        if i == steps:
            break
        if b * A.dim > budget:
            raise StepBudgetExceeded(f"free module of rank {b} exceeds the budget of {budget} dimensions")
        Fr = _FreeAmbient(A, adeg, gdeg)
        K = _next_syzygy(F, X, Fr, new_gens, adeg)
        expected = b * A.dim - syz[-1]
        got = sum(k.shape[1] for k in K.values())
        if got != expected:
            raise ResolutionError(f"exactness check failed at step {i}: {got} != {expected}")
        X = Fr
    return BettiTable(A, M, betti, gdegs, syz, diffs)


def _next_syzygy(F, X: _Ambient, Fr: _FreeAmbient, new_gens: dict, adeg) -> dict:
    """Kernel of ``Fr -> X`` sending the ``g``-th basis vector to the ``g``-th generator."""
    n = Fr.n
    order = sorted(new_gens)
    offset, start = {}, 0
    for d in order:
        offset[d] = start
        start += new_gens[d].shape[1]
    xs = X.slices()
    K = {}
    for D, idx in Fr.slices().items():
        cols = len(idx)
        if D not in xs:
            K[D] = F.identity(cols)
            continue
        mat = F.zeros((len(xs[D]), cols))
        g_of = idx // n
        c_of = idx % n
        for d in order:
            G = new_gens[d]
            for c in range(n):
                if d + adeg[c] != D:
                    continue
                sel = np.flatnonzero((c_of == c) & (g_of >= offset[d]) & (g_of < offset[d] + G.shape[1]))
                if sel.size == 0:
                    continue
                img = X.apply(F, c, d, G)  # columns for all generators of degree d
                if img is None:
                    continue
                mat[:, sel] = img[:, g_of[sel] - offset[d]]
        K[D] = la.nullspace(F, mat)
    return K


def _differential_matrix(X: _Ambient, new_gens: dict, gdeg, A: FDAlgebra):
    if not isinstance(X, _FreeAmbient):
        return None
    F = A.field
    n = A.dim
    b_prev = len(X.gdeg)
    out = F.zeros((b_prev, len(gdeg), n))
    j = 0
    for d in sorted(new_gens):
        idx = X.slices()[d]
        G = new_gens[d]
        for col in range(G.shape[1]):
            full = F.zeros(X.dim)
            full[idx] = G[:, col]
            out[:, j, :] = full.reshape(b_prev, n)
            j += 1
    return out


def poincare_series(A: FDAlgebra, M: FDModule | None = None, order: int = 6,
                    budget: int = DEFAULT_BUDGET) -> TruncatedSeries:
    return minimal_free_resolution(A, M, order, budget).poincare()


# -- Golod test ---------------------------------------------------------------


@dataclass
class GolodUpTo:
    order: int
    lhs: TruncatedSeries
    rhs: TruncatedSeries

    golod = True


@dataclass
class NotGolodAt:
    degree: int
    lhs: TruncatedSeries
    rhs: TruncatedSeries

    golod = False


def golod_bound_series(kappa: AlgebraMorphism, order: int, budget: int = DEFAULT_BUDGET):
    """``(P^Q_k, P^P_k / (1 + z - z P^P_Q))`` for ``kappa: P -> Q``."""
    from .series import evaluate_formula

    if not kappa.is_surjective:
        raise NotSurjective("Golod test needs a surjection")
    P, Q = kappa.source, kappa.target
    lhs = poincare_series(Q, None, order, budget)
    PPk = poincare_series(P, None, order, budget)
    PPQ = poincare_series(P, algebra_as_module(kappa), order, budget)
    rhs = evaluate_formula("GOLOD_BOUND", {"P_R_k": PPk, "P_R_Rq": PPQ}, order)
    return lhs, rhs


def golod_test(kappa: AlgebraMorphism, order: int = 6, budget: int = DEFAULT_BUDGET):
    """``GolodUpTo(order)`` when the Serre-type bound is attained, else ``NotGolodAt``."""
    lhs, rhs = golod_bound_series(kappa, order, budget)
    if not termwise_leq(lhs, rhs):
        raise ResolutionError(f"Poincare bound violated: {lhs.coeffs} vs {rhs.coeffs}")
    for i, (a, b) in enumerate(zip(lhs.coeffs, rhs.coeffs)):
        if a != b:
            return NotGolodAt(i, lhs, rhs)
    return GolodUpTo(order, lhs, rhs)


# -- deviations -----------------------------------------------------------------


@dataclass
class DeviationVector:
    eps: list

    def __getitem__(self, i):
        """1-based access: ``v[1]`` is the embedding dimension."""
        return self.eps[i - 1]


@dataclass
class CIVerdict:
    complete_intersection: bool
    order: int
    codim: int
    b: int | None = None
    c: int | None = None


def deviations(A: FDAlgebra, order: int = 8, budget: int = DEFAULT_BUDGET):
    """Deviations ``eps_1..eps_order`` and the order-qualified complete-intersection verdict."""
    if order < 3:
        raise ValueError("deviations need order >= 3")
    P = poincare_series(A, None, order, budget)
    eps = deviations_from_poincare(P)
    if any(e < 0 for e in eps):
        raise NegativeDeviation(f"negative deviation in {eps}")
    ci = all(e == 0 for e in eps[2:])
    verdict = CIVerdict(ci, order, eps[1] if len(eps) > 1 else 0,
                        b=eps[0] - eps[1] if ci else None, c=eps[1] if ci else None)
    return DeviationVector(eps), verdict
