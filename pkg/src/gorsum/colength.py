"""Bounds on the Gorenstein colength ``gcl Q``.

``gcl Q`` is the least ``length(A) - length(Q)`` over surjections ``A -> Q``
from artinian Gorenstein algebras ``A``.  It is never computed exactly here;
``gcl_bounds`` returns an interval together with a verified cover realizing
the upper end.

Two tests decide ``gcl Q <= 1`` constructively:

* ``teter_test`` looks for a symmetric bilinear form ``psi`` on ``m`` with
  ``psi(ab, c) = psi(a, bc)`` that pairs ``soc Q`` nondegenerately against
  ``m``; the algebra ``Q (+) k s`` with ``e_i e_j = (product in Q) + psi s`` is
  then Gorenstein with ``A / soc A = Q``.
* ``hv_epi_search`` looks for a surjective ``Q``-linear map ``E -> m`` where
  ``E = Hom_k(Q, k)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import (AlgebraMorphism, FDAlgebra, FDModule, ModuleMorphism, algebra_from_presentation,
                      dual_canonical_module, induced_map, module_hom_space, morphism_from_images,
                      quotient, trivial_extension)
from .poly import PolyRing
from .sums import FiberProduct, connected_sum_over_k


class ColengthError(ValueError):
    pass


class WitnessInvalid(ColengthError):
    pass


class CharTwo(ColengthError):
    pass


DEFAULT_BUDGET = 128


@dataclass
class Cover:
    """A surjection from an artinian Gorenstein algebra; ``gap = len A - len Q``."""

    map: AlgebraMorphism
    provenance: str

    @property
    def source(self) -> FDAlgebra:
        return self.map.source

    @property
    def gap(self) -> int:
        return self.map.source.dim - self.map.target.dim


def verify_cover(cover: AlgebraMorphism, Q: FDAlgebra | None = None) -> None:
    """Raise ``WitnessInvalid`` unless ``cover`` is a surjection onto ``Q`` from a Gorenstein algebra."""
    A = cover.source
    if Q is not None and cover.target is not Q:
        raise WitnessInvalid("cover does not land in Q")
    try:
        A.audit()
        cover.check()
    except Exception as exc:  # audit and morphism failures alike
        raise WitnessInvalid(f"cover is not an algebra surjection: {exc}") from exc
    if not A.is_gorenstein:
        raise WitnessInvalid(f"cover has type {A.type}, not 1")
    if not cover.is_surjective:
        raise WitnessInvalid("cover is not surjective")


# -- explicit covers ------------------------------------------------------------


def identity_cover(Q: FDAlgebra) -> Cover:
    M = Q.field.identity(Q.dim)
    return Cover(AlgebraMorphism(Q, Q, M, check=False), "Q is Gorenstein")


def trivial_extension_cover(Q: FDAlgebra) -> Cover:
    """``Q (+) E -> Q``; gap ``length(Q)``."""
    shift = Q.a_invariant + 1 if Q.graded else 0
    E = dual_canonical_module(Q, shift=shift)
    A = trivial_extension(Q, E)
    M = Q.field.zeros((Q.dim, A.dim))
    M[:, : Q.dim] = Q.field.identity(Q.dim)
    return Cover(AlgebraMorphism(A, Q, M), "trivial extension by the canonical module")


def principal_cover(Q: FDAlgebra, extra: int = 1) -> Cover:
    """``k[x]/(x^(n+extra)) -> Q = k[x]/(x^n)`` for ``Q`` of embedding dimension one."""
    if Q.edim != 1:
        raise ColengthError("principal covers need embedding dimension one")
    F = Q.field
    g = Q.generator_indices[0]
    w = Q.degrees[g] if Q.graded else 1
    ring = PolyRing(F, [("x", w)])
    x = ring.var("x")
    A, pres = algebra_from_presentation(ring, [x ** (Q.dim + extra)], graded=Q.graded)
    cov = morphism_from_images(pres, Q, [Q.basis_vector(g)])
    return Cover(cov, "principal ideal ring over Q")


def extend_cover(cover: Cover, n: int) -> Cover:
    """Cover with gap ``cover.gap + n`` through ``A #_k k[t]/(t^(n+2))``.

    Needs ``cover.gap >= 1`` so that the kernel contains ``soc A``.
    """
    if cover.gap < 1:
        raise ColengthError("only covers with a nonzero kernel can be extended")
    A, Q = cover.source, cover.map.target
    F = A.field
    ring = PolyRing(F, [("t", 1)])
    t = ring.var("t")
    S, _ = algebra_from_presentation(ring, [t ** (n + 2)])
    graded = None if (A.graded and A.a_invariant == S.a_invariant) else False
    res, _ = connected_sum_over_k(A, S, graded=graded, align=False)
    P = res.fiber
    f = AlgebraMorphism(P.P, Q, la.matmul(F, cover.map.matrix, P.rho.matrix), check=False)
    g = induced_map(res.kappa, f)
    return Cover(g, f"{cover.provenance}, extended by a connected sum with k[t]/(t^{n + 2})")


def fiber_product_cover(fp: FiberProduct, cover_R: Cover, cover_S: Cover) -> Cover:
    """``A #_k B -> R x_k S`` from covers ``A -> R`` and ``B -> S`` with nonzero kernels."""
    if fp.T.dim != 1:
        raise ColengthError("fiber product covers need T = k")
    if cover_R.gap < 1 or cover_S.gap < 1:
        raise ColengthError("covers must have nonzero kernels")
    A, B = cover_R.source, cover_S.source
    F = A.field
    graded = None if (A.graded and B.graded and A.a_invariant == B.a_invariant) else False
    res, _ = connected_sum_over_k(A, B, graded=graded, align=False)
    P2 = res.fiber
    pairs = np.concatenate([la.matmul(F, cover_R.map.matrix, P2.rho.matrix),
                            la.matmul(F, cover_S.map.matrix, P2.sigma.matrix)], axis=0)
    f = AlgebraMorphism(P2.P, fp.P, fp.embedding.coordinates(pairs), check=False)
    g = induced_map(res.kappa, f)
    return Cover(g, "connected sum of covers of the factors")


# -- Teter test -------------------------------------------------------------------


@dataclass
class TeterWitness:
    psi: np.ndarray  # symmetric form on m, in the basis e_1 .. e_{n-1}
    phi: ModuleMorphism | None  # m -> Hom_k(m, k), x -> psi(x, -)
    cover: Cover
    graded: bool


def _teter_constraints(Q: FDAlgebra, pairs):
    """Rows ``psi(ab, c) - psi(a, bc)`` for ``a, c`` in ``m`` and ``b`` an algebra generator."""
    F = Q.field
    n = Q.dim
    col = {p: j for j, p in enumerate(pairs)}

    def var(i, j):
        return col.get((i, j) if i <= j else (j, i))

    rows = []
    mult = Q.mult
    for b in Q.generator_indices:
        for a in range(1, n):
            for c in range(a, n):
                row = {}
                for k in np.flatnonzero(mult[a, b, 1:] != 0) + 1:
                    v = var(int(k), c)
                    if v is not None:
                        row[v] = row.get(v, 0) + mult[a, b, k]
                for k in np.flatnonzero(mult[b, c, 1:] != 0) + 1:
                    v = var(a, int(k))
                    if v is not None:
                        row[v] = row.get(v, 0) - mult[b, c, k]
                if row:
                    r = F.zeros(len(pairs))
                    for v, x in row.items():
                        r[v] = F(x)
                    rows.append(F.normalize(r))
    if not rows:
        return F.zeros((0, len(pairs)))
    return np.stack(rows)


def _psi_matrix(F, n, pairs, x):
    P = F.zeros((n - 1, n - 1))
    for (i, j), v in zip(pairs, x):
        P[i - 1, j - 1] = v
        P[j - 1, i - 1] = v
    return P


def _socle_nondegenerate(F, soc_m, P) -> bool:
    return la.rank(F, la.matmul(F, soc_m.T, P)) == soc_m.shape[1]


def teter_cover(Q: FDAlgebra, psi, degree: int | None = None) -> Cover:
    """``Q (+) k s`` with ``e_i e_j = e_i e_j + psi(e_i, e_j) s`` on ``m``, mapped onto ``Q``."""
    F = Q.field
    n = Q.dim
    mult = F.zeros((n + 1, n + 1, n + 1))
    mult[:n, :n, :n] = Q.mult
    mult[1:n, 1:n, n] = la.coerce(F, psi)
    mult[0, n, n] = F.one
    mult[n, 0, n] = F.one
    degrees = list(Q.degrees) + [degree] if (Q.graded and degree is not None) else None
    A = FDAlgebra(F, mult, degrees=degrees, labels=list(Q.labels) + ["s"])
    M = F.zeros((n, n + 1))
    M[:, :n] = F.identity(n)
    return Cover(AlgebraMorphism(A, Q, M), "Teter form")


def teter_test(Q: FDAlgebra, budget: int = DEFAULT_BUDGET, seed: int = 0) -> TeterWitness | None:
    """A symmetric form certifying ``Q = A / soc A`` for a Gorenstein ``A``, or ``None``.

    Graded forms (all pairings in one total degree) are tried first, then the
    whole solution space.  Each space is scanned through its basis and
    ``budget`` deterministic random combinations.
    """
    F = Q.field
    if F.characteristic == 2:
        raise CharTwo("the Teter test needs 2 to be invertible")
    n = Q.dim
    if n == 1:
        return TeterWitness(F.zeros((0, 0)), None, identity_cover(Q), Q.graded)
    rng = np.random.default_rng(seed)
    soc = Q.socle_basis
    soc_m = soc[1:]
    all_pairs = [(i, j) for i in range(1, n) for j in range(i, n)]
    attempts = []
    if Q.graded:
        deg = Q.degrees
        top = max(deg[i] for i in range(n) if np.any(soc[i] != 0))
        for D in range(top + 1, 2 * Q.a_invariant + 1):
            attempts.append((D, [p for p in all_pairs if deg[p[0]] + deg[p[1]] == D]))
    attempts.append((None, all_pairs))
    for D, pairs in attempts:
        if not pairs:
            continue
        C = _teter_constraints(Q, pairs)
        N = la.nullspace(F, C) if C.shape[0] else F.identity(len(pairs))
        if N.shape[1] == 0:
            continue
        cands = [N[:, j] for j in range(N.shape[1])]
        cands += [F.normalize(N @ F.random_array(rng, N.shape[1])) for _ in range(budget)]
        for x in cands:
            P = _psi_matrix(F, n, pairs, x)
            if _socle_nondegenerate(F, soc_m, P):
                cover = teter_cover(Q, P, D)
                verify_cover(cover.map, Q)
                return TeterWitness(P, _teter_phi(Q, P), cover, D is not None)
    return None


def _teter_phi(Q: FDAlgebra, P) -> ModuleMorphism:
    """``m -> Hom_k(m, k)`` induced by the form, checked ``Q``-linear."""
    F = Q.field
    m = Q.ideal(Q.maximal_ideal_basis())
    B = m.embedding[1:]  # m-module basis in coordinates e_1 .. e_{n-1}
    dual = FDModule(Q, [np.ascontiguousarray(a.T) for a in m.action], name="Hom(m,k)")
    mat = la.matmul(F, la.matmul(F, B.T, P), B)
    return ModuleMorphism(m, dual, mat)


# -- epimorphisms E -> m --------------------------------------------------------------


@dataclass
class Found:
    epi: ModuleMorphism

    found = True


@dataclass
class Exhausted:
    tried: int

    found = False


def hv_epi_search(Q: FDAlgebra, budget: int = DEFAULT_BUDGET, seed: int = 0):
    """Search ``Hom_Q(E, m)`` for a surjection; ``Exhausted`` is budget-limited, not a proof."""
    F = Q.field
    if F.characteristic == 2:
        raise CharTwo("the epimorphism criterion needs 2 to be invertible")
    E = dual_canonical_module(Q)
    m = Q.ideal(Q.maximal_ideal_basis())
    if m.dim == 0:
        return Found(ModuleMorphism(E, m, F.zeros((0, E.dim))))
    homs = module_hom_space(E, m)
    if not homs:
        return Exhausted(0)
    rng = np.random.default_rng(seed)
    tried = 0
    for h in homs:
        tried += 1
        if la.rank(F, h) == m.dim:
            return Found(ModuleMorphism(E, m, h))
    stack = np.stack([h.ravel() for h in homs], axis=1)
    for _ in range(budget):
        tried += 1
        h = F.normalize(stack @ F.random_array(rng, len(homs))).reshape(m.dim, E.dim)
        if la.rank(F, h) == m.dim:
            return Found(ModuleMorphism(E, m, h))
    return Exhausted(tried)


# -- bounds ---------------------------------------------------------------------------------


@dataclass
class ColengthReport:
    Q: FDAlgebra
    lower: int
    lower_provenance: str
    upper: int
    witness: Cover
    teter: TeterWitness | None = None
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "lower_provenance": self.lower_provenance,
                "upper_provenance": self.witness.provenance, "witness_length": self.witness.source.dim,
                "notes": list(self.notes)}


def gorenstein_quotient_lengths(Q: FDAlgebra, budget: int = 64, seed: int = 0) -> int:
    """Largest length of ``Q / ann(f)`` over the sampled functionals ``f``.

    ``Q / ann(f)`` is Gorenstein and its length is the rank of ``(a, b) -> f(ab)``.
    """
    F = Q.field
    rng = np.random.default_rng(seed)
    best = 1
    cands = [F.identity(Q.dim)[:, j] for j in range(Q.dim)]
    cands += [F.random_array(rng, Q.dim) for _ in range(budget)]
    for f in cands:
        G = F.normalize(np.tensordot(Q.mult, f, axes=([2], [0])))
        best = max(best, la.rank(F, G))
        if best == Q.dim:
            break
    return best


def gcl_bounds(Q: FDAlgebra, covers=None, fiber: FiberProduct | None = None,
               budget: int = DEFAULT_BUDGET, seed: int = 0) -> ColengthReport:
    """Interval ``[lower, upper]`` containing ``gcl Q``, with a verified cover for ``upper``.

    ``covers`` are extra surjections ``A -> Q`` to consider (each is verified);
    ``fiber`` presents ``Q`` as ``R x_k S`` and enables the factor-wise bounds.
    """
    notes = []
    if Q.is_gorenstein:
        return ColengthReport(Q, 0, "Q is Gorenstein", 0, identity_cover(Q))
    cands = []
    for c in covers or []:
        cmap = c.map if isinstance(c, Cover) else c
        verify_cover(cmap, Q)
        cands.append(c if isinstance(c, Cover) else Cover(cmap, "supplied cover"))
    te = trivial_extension_cover(Q)
    verify_cover(te.map, Q)
    cands.append(te)

    lower, lower_prov = 1, "Q is not Gorenstein"
    lq = gorenstein_quotient_lengths(Q, budget=min(budget, 64), seed=seed)
    gq = Q.edim - (Q.dim - lq)
    if gq > lower:
        lower, lower_prov = gq, f"Gorenstein quotient of length {lq}"

    teter = None
    if Q.field.characteristic != 2:
        teter = teter_test(Q, budget=budget, seed=seed)
        if teter is not None:
            cands.append(teter.cover)
    else:
        notes.append("Teter test skipped in characteristic 2")

    if fiber is not None:
        if fiber.P is not Q:
            raise ColengthError("fiber product does not present Q")
        lo, fc = _fiber_bounds(fiber, budget, seed, notes)
        if lo > lower:
            lower, lower_prov = lo, "fiber product of Gorenstein factors"
        cands.extend(fc)

    best = min(cands, key=lambda c: c.gap)
    if lower > best.gap:
        raise ColengthError(f"inconsistent bounds: lower {lower} > upper {best.gap}")
    return ColengthReport(Q, lower, lower_prov, best.gap, best, teter, notes)


def _best_cover(A: FDAlgebra, budget, seed) -> Cover:
    """A cover of ``A`` with nonzero kernel and the smallest gap found."""
    if A.is_gorenstein:
        return principal_cover(A) if A.edim == 1 else trivial_extension_cover(A)
    return gcl_bounds(A, budget=budget, seed=seed).witness


def _fiber_bounds(fp: FiberProduct, budget, seed, notes):
    R, S = fp.R, fp.S
    lower = 0
    covers = []
    if R.dim == 1 or S.dim == 1:
        return lower, covers
    if R.is_gorenstein and S.is_gorenstein:
        lower = R.edim + S.edim - 1
        notes.append(f"Gorenstein factors: gcl >= edim R + edim S - 1 = {lower}")
    try:
        cR, cS = _best_cover(R, budget, seed), _best_cover(S, budget, seed)
        cov = fiber_product_cover(fp, cR, cS)
        verify_cover(cov.map, fp.P)
        covers.append(cov)
    except ColengthError as exc:
        notes.append(f"factor cover not built: {exc}")
    return lower, covers


def colength_gap_witnesses(Q: FDAlgebra, gaps, budget: int = DEFAULT_BUDGET, seed: int = 0) -> dict:
    """Covers of ``Q`` with ``length(A) - length(Q) = upper + n`` for each ``n`` in ``gaps``."""
    if Q.edim == 1:
        return {n: principal_cover(Q, 1 + n) for n in gaps}
    rep = gcl_bounds(Q, budget=budget, seed=seed)
    if rep.upper < 1:
        raise ColengthError("Gorenstein Q of embedding dimension >= 2 has no positive-gap cover here")
    out = {}
    for n in gaps:
        c = rep.witness if n == 0 else extend_cover(rep.witness, n)
        verify_cover(c.map, Q)
        out[n] = c
    return out


def socle_quotient(Q: FDAlgebra):
    """``Q -> Q / soc Q``."""
    return quotient(Q, Q.socle_basis)[1]
