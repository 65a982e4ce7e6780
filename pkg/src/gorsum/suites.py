"""Randomized property suites on graded instances.

Each suite draws its instances from a seeded generator, checks one family of
identities exactly and returns a :class:`SuiteResult`.  The command line
``random-suite`` and the acceptance tests share these functions.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations_with_replacement

import numpy as np

from . import linalg as la
from . import randgen as rg
from .algebra import (AuditFailure, algebra_as_module, augmentation, dual_canonical_module, induced_map,
                      quotient, quotient_module, regrade, residue_field, restrict_module, trivial_extension)
from .colength import hv_epi_search, teter_test, trivial_extension_cover, verify_cover
from .dsl import format_session, parse_session
from .fields import GF
from .poly import PolyRing, groebner_basis_in
from .resolution import GolodUpTo, golod_bound_series, golod_test, poincare_series
from .series import TruncatedSeries, evaluate_formula, termwise_leq
from .sums import (AInvariantMismatch, ConnectedSumDiagram, NoCompatibleIdentification, amalgamated_duplication,
                   connected_sum, connected_sum_over_k, fiber_product, gorenstein_connected_sum, split_socle)

F101 = GF(101)


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    total: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.total > 0 and self.passed == self.total

    def record(self, ok: bool, info=None):
        self.total += 1
        if ok:
            self.passed += 1
        else:
            self.failures.append(info)


def _timed(fn):
    def wrapper(*args, **kwargs):
        t = time.perf_counter()
        res = fn(*args, **kwargs)
        res.elapsed = time.perf_counter() - t
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _series(coeffs, order):
    return TruncatedSeries(coeffs, order)


def _hilb(A, order):
    return _series(A.hilbert, order)


def _module_hilbert(M, order):
    c = [0] * (order + 1)
    for d in M.degrees:
        if 0 <= d <= order:
            c[d] += 1
    return TruncatedSeries(c)


# -- lengths, Hilbert series, types ----------------------------------------------------------


@_timed
def fiber_product_identities(count: int, seed: int, F=F101) -> SuiteResult:
    """Length and Hilbert identities for ``R x_T S`` and the type inequalities."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("fiber product: length, Hilbert series, type inequalities")
    for i in range(count):
        R, S, T, eR, eS = rg.random_common_quotient(F, rng)
        fp = fiber_product(eR, eS)
        P = fp.P
        P.audit()
        n = max(len(R.hilbert), len(S.hilbert), len(P.hilbert)) - 1
        hp = evaluate_formula("HILB_PROD", {"H_R": _hilb(R, n), "H_S": _hilb(S, n), "H_T": _hilb(T, n)}, n)
        ok = P.dim + T.dim == R.dim + S.dim and hp == _hilb(P, n) and _type_inequalities(fp)
        res.record(ok, i)
    return res


def _socle_rank_of_ideal(A, K):
    """``type_A K`` for the ideal spanned by the columns of ``K``: ``dim (K ∩ soc A)``."""
    F = A.field
    if K.shape[1] == 0:
        return 0
    soc = A.socle_basis
    both = np.concatenate([K, soc], axis=1)
    return K.shape[1] + soc.shape[1] - la.rank(F, both)


def _type_inequalities(fp) -> bool:
    R, S, T, P = fp.R, fp.S, fp.T, fp.P
    I, J = fp.eR.kernel_basis(), fp.eS.kernel_basis()
    tI, tJ = _socle_rank_of_ideal(R, I), _socle_rank_of_ideal(S, J)
    ok = R.type + S.type >= P.type >= max(R.type + S.type - T.type, tI + tJ)
    if I.shape[1] and J.shape[1]:
        ok = ok and not P.is_gorenstein
    return ok


@_timed
def connected_sum_identities(count: int, seed: int, F=F101) -> SuiteResult:
    """Length and Hilbert identities for connected sums (half Gorenstein, half along socles over k)."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("connected sum: length and Hilbert series")
    i = skipped = 0
    while res.total < count:
        i += 1
        if res.total % 2 == 0:
            R, S, T, eR, eS = rg.random_gorenstein_diagram(F, rng, same_a=True)
            try:
                out, d = gorenstein_connected_sum(R, S, T, eR, eS)
            except NoCompatibleIdentification:
                skipped += 1
                continue
        else:
            d = _socle_diagram(F, rng)
            if d is None:
                continue
            out = connected_sum(d)
            R, S, T = d.R, d.S, d.T
        if out.Q is None:
            res.record(False, ("zero ring", i))
            continue
        Q, V = out.Q, d.V
        Q.audit()
        n = max(len(R.hilbert), len(S.hilbert)) - 1
        hs = evaluate_formula("HILB_SUM", {"H_R": _hilb(R, n), "H_S": _hilb(S, n), "H_T": _hilb(T, n),
                                           "H_V": _module_hilbert(V, n)}, n)
        ok = Q.dim == R.dim + S.dim - T.dim - V.dim and Q.graded and hs == _hilb(Q, n)
        res.record(ok, i)
    if skipped:
        res.detail = f"{skipped} diagrams without a compatible identification resampled"
    return res


def _socle_diagram(F, rng, tries=20):
    """``V = k`` sent to homogeneous socle elements of equal degree in ``R`` and ``S``."""
    k = residue_field(F)
    for _ in range(tries):
        R = rg.random_graded_algebra(F, rng, max_length=10, min_length=2)
        S = rg.random_graded_algebra(F, rng, max_length=10, min_length=2)
        degs = sorted(set(_socle_degrees(R)) & set(_socle_degrees(S)))
        if not degs:
            continue
        dg = degs[int(rng.integers(0, len(degs)))]
        iR = _random_socle_element(R, dg, rng)
        iS = _random_socle_element(S, dg, rng)
        V = k.regular_module()
        V.degrees = [dg]
        return ConnectedSumDiagram(R, S, k, V, augmentation(R, k), augmentation(S, k),
                                   iR.reshape(-1, 1), iS.reshape(-1, 1))
    return None


def _socle_degrees(A):
    soc = A.socle_basis
    out = []
    for j in range(soc.shape[1]):
        d = A.element_degree(soc[:, j])
        if d is not None and d > 0:
            out.append(d)
    return out


def _random_socle_element(A, d, rng):
    F = A.field
    soc = A.socle_basis
    cols = [j for j in range(soc.shape[1]) if A.element_degree(soc[:, j]) == d]
    while True:
        v = F.normalize(soc[:, cols] @ F.random_array(rng, len(cols)))
        if np.any(v != 0):
            return v


@_timed
def a_invariant_gate(count: int, seed: int, F=F101) -> SuiteResult:
    """Graded sums exist only for ``a(R) = a(S)``; then ``a(Q) = a(R)`` and the reversed-``H_T`` formula holds."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("graded connected sums: a-invariant gate and reversed H_T formula")
    i = skipped = 0
    while res.total < count:
        i += 1
        same = res.total % 2 == 0
        R, S, T, eR, eS = rg.random_gorenstein_diagram(F, rng, same_a=same)
        if not same:
            try:
                gorenstein_connected_sum(R, S, T, eR, eS, graded=True)
                res.record(False, ("accepted", i))
            except AInvariantMismatch:
                res.record(True)
            continue
        try:
            out, d = gorenstein_connected_sum(R, S, T, eR, eS, graded=True)
        except NoCompatibleIdentification:
            skipped += 1
            continue
        Q = out.Q
        a = R.a_invariant
        n = a
        hs = evaluate_formula("HILB_SUM_GOR", {"H_R": _hilb(R, n), "H_S": _hilb(S, n), "H_T": _hilb(T, n), "a": a}, n)
        res.record(Q.graded and Q.a_invariant == a and Q.is_gorenstein and hs == _hilb(Q, n), i)
    if skipped:
        res.detail = f"{skipped} diagrams without a compatible identification resampled"
    return res


# -- Poincare series -----------------------------------------------------------------------------


@_timed
def dress_kramer(count: int, seed: int, order: int = 6, F=F101, max_length: int = 10) -> SuiteResult:
    """``P^{R x_k S}_M`` from resolutions equals the fiber-product formula for ``M = k`` and ``M = R/soc R``."""
    rng = np.random.default_rng(seed)
    res = SuiteResult(f"fiber products over k: Poincare series for M = k and M = R/soc R (order {order})")
    k = residue_field(F)
    for i in range(count):
        R = rg.random_graded_algebra(F, rng, max_length=max_length)
        S = rg.random_graded_algebra(F, rng, max_length=max_length)
        fp = fiber_product(augmentation(R, k), augmentation(S, k))
        PR, PS = poincare_series(R, None, order), poincare_series(S, None, order)
        ok = poincare_series(fp.P, None, order) == evaluate_formula(
            "DRESS_KRAMER", {"P_R_M": PR, "P_R_k": PR, "P_S_k": PS}, order)
        M = quotient_module(R.regular_module(), R.socle_basis)
        PRM = poincare_series(R, M, order)
        lhs = poincare_series(fp.P, restrict_module(M, fp.rho), order)
        ok = ok and lhs == evaluate_formula("DRESS_KRAMER", {"P_R_M": PRM, "P_R_k": PR, "P_S_k": PS}, order)
        res.record(ok, i)
    return res


@_timed
def golod_socle_quotients(count: int, seed: int, order: int = 6, F=F101) -> SuiteResult:
    """``Q -> Q/soc Q`` is Golod up to ``order`` for Gorenstein ``Q`` of embedding dimension at least 2."""
    rng = np.random.default_rng(seed)
    res = SuiteResult(f"Gorenstein socle quotients are Golod up to order {order}")
    for i in range(count):
        Q = rg.random_gorenstein(F, rng, min_edim=2, max_length=10)
        kappa = quotient(Q, Q.socle_basis)[1]
        res.record(isinstance(golod_test(kappa, order), GolodUpTo), i)
    return res


@_timed
def golod_bound(count: int, seed: int, order: int = 6, F=F101) -> SuiteResult:
    """``P^Q_k`` is termwise at most the Golod bound for random surjections ``P -> Q``."""
    rng = np.random.default_rng(seed)
    res = SuiteResult(f"Poincare bound for random surjections (order {order})")
    i = 0
    while res.total < count:
        i += 1
        P = rg.random_graded_algebra(F, rng, max_length=10, min_length=3)
        kappa = rg.random_surjection(P, rng)
        lhs, rhs = golod_bound_series(kappa, order)
        res.record(termwise_leq(lhs, rhs), i)
    return res


@_timed
def golod_factorization(count: int, seed: int, order: int = 6, F=F101) -> SuiteResult:
    """For ``P -> Q -> P'`` with ``m_P`` killing the kernel, the composite is Golod iff both factors are.

    Even-numbered triples are ``R x_k S -> R #_k S -> R' x_k S'`` for Gorenstein
    ``R``, ``S``; odd ones pass through socle quotients of a random algebra.
    """
    rng = np.random.default_rng(seed)
    res = SuiteResult(f"Golod property of composites through socle quotients (order {order})")
    golod_seen = 0
    i = 0
    while res.total < count:
        i += 1
        triple = _sum_triple(F, rng) if res.total % 2 == 0 else _socle_triple(F, rng)
        if triple is None:
            continue
        k1, k2 = triple
        cache = {}
        g1, g2, g = (_is_golod(m, order, cache) for m in (k1, k2, k2.compose(k1)))
        golod_seen += g
        res.record(g == (g1 and g2), (i, g1, g2, g))
    res.detail = f"{golod_seen} Golod composites"
    return res


def _is_golod(kappa, order, cache) -> bool:
    def pk(A):
        if id(A) not in cache:
            cache[id(A)] = poincare_series(A, None, order)
        return cache[id(A)]

    lhs = pk(kappa.target)
    PPQ = poincare_series(kappa.source, algebra_as_module(kappa), order)
    rhs = evaluate_formula("GOLOD_BOUND", {"P_R_k": pk(kappa.source), "P_R_Rq": PPQ}, order)
    if not termwise_leq(lhs, rhs):
        raise AssertionError(f"Poincare bound violated: {lhs.coeffs} vs {rhs.coeffs}")
    return lhs == rhs


def _sum_triple(F, rng):
    """``R x_k S -> R #_k S -> R/soc R x_k S/soc S``."""
    R = rg.random_gorenstein(F, rng, nvars=int(rng.integers(1, 3)), min_length=3, max_length=7)
    S = rg.random_gorenstein(F, rng, nvars=int(rng.integers(1, 3)), min_length=3, max_length=7)
    out, _ = connected_sum_over_k(R, S)
    P = out.P
    pi = quotient(P, P.socle_basis)[1]
    return out.kappa, induced_map(out.kappa, pi)


def _socle_triple(F, rng):
    """``P -> P/K1 -> P/K`` with ``0 < K1 < K`` inside ``soc P`` for a random ``P``."""
    P = rg.random_graded_algebra(F, rng, max_length=9, min_length=4)
    soc = P.socle_basis
    if soc.shape[1] < 2:
        return None
    k1 = quotient(P, soc[:, :1])[1]
    k = quotient(P, soc[:, :2])[1]
    return k1, induced_map(k1, k)


@_timed
def connected_sum_poincare(count: int, seed: int, order: int = 6, F=F101, max_edim: int = 2) -> SuiteResult:
    """``P^{R #_k S}_k`` against the closed forms with ``r = 1`` for Gorenstein ``R``, ``S`` of length >= 3."""
    rng = np.random.default_rng(seed)
    res = SuiteResult(f"connected sums over k of Gorenstein algebras: Poincare series (order {order})")
    for i in range(count):
        R = rg.random_gorenstein(F, rng, nvars=int(rng.integers(1, max_edim + 1)), min_length=3, max_length=10)
        S = rg.random_gorenstein(F, rng, nvars=int(rng.integers(1, max_edim + 1)), min_length=3, max_length=10)
        out, d = connected_sum_over_k(R, S)
        Q = out.Q
        Rq = quotient(R, R.socle_basis)[0]
        Sq = quotient(S, S.socle_basis)[0]
        PR, PS = poincare_series(Rq, None, order), poincare_series(Sq, None, order)
        PQ = poincare_series(Q, None, order)
        a = evaluate_formula("CONNSUM_POINCARE", {"P_Rq_N": PR, "P_Rq_k": PR, "P_Sq_k": PS, "r": 1}, order)
        b = evaluate_formula("SERIES_Q", {"P_Rq_k": PR, "P_Sq_k": PS, "r": 1}, order)
        res.record(PQ == a == b, i)
    return res


# -- colength ----------------------------------------------------------------------------------------


@_timed
def colength_agreement(count: int, seed: int, F=F101) -> SuiteResult:
    """A found epimorphism ``E -> m`` comes with a Teter witness; trivial extensions double the length."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("colength: epimorphism search implies Teter witness; trivial extension gap")
    found = 0
    for i in range(count):
        if i % 3 == 0:
            Q = rg.random_gorenstein(F, rng, max_length=8)
            Q = quotient(Q, Q.socle_basis)[0] if Q.dim > 2 else Q
        else:
            Q = rg.random_graded_algebra(F, rng, max_length=8)
        hv = hv_epi_search(Q)
        te = teter_test(Q)
        found += hv.found
        ok = (not hv.found) or te is not None
        if te is not None:
            verify_cover(te.cover.map, Q)
            ok = ok and te.cover.gap == 1
        cov = trivial_extension_cover(Q)
        verify_cover(cov.map, Q)
        ok = ok and cov.gap == Q.dim
        res.record(ok, i)
    res.detail = f"{found} epimorphisms found"
    return res


# -- Groebner bases against linear algebra ----------------------------------------------------------


def _monomials(n, d):
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for j in combo:
            e[j] += 1
        out.append(tuple(e))
    return out


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


@_timed
def groebner_vs_slices(count: int, seed: int, F=F101, max_degree: int = 5) -> SuiteResult:
    """Standard monomials per degree equal ``dim S_d - rank I_d`` computed by linear algebra."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("Groebner quotient dimensions against degree-slice linear algebra")
    for i in range(count):
        n = int(rng.integers(2, 4))
        ring = PolyRing(F, [f"x{j}" for j in range(n)])
        gens = []
        for _ in range(int(rng.integers(1, 4))):
            d = int(rng.integers(1, 4))
            mons = _monomials(n, d)
            pick = rng.choice(len(mons), size=min(len(mons), int(rng.integers(1, 4))), replace=False)
            f = ring.zero
            for p in pick:
                f = f + ring.monomial(mons[p], F(int(rng.integers(1, 101))))
            gens.append(f)
        G = groebner_basis_in(ring, gens)
        leads = [g.leading_monomial() for g in G.polys]
        ok = True
        for d in range(max_degree + 1):
            mons = _monomials(n, d)
            std = sum(1 for m in mons if not any(_divides(l, m) for l in leads))
            col = {m: j for j, m in enumerate(mons)}
            rows = []
            for g in gens:
                dg = g.degree()
                if dg > d:
                    continue
                for m in _monomials(n, d - dg):
                    v = F.zeros(len(mons))
                    for mon, c in g.mul_term(m, F.one).terms.items():
                        v[col[mon]] = c
                    rows.append(v)
            rk = la.rank(F, np.stack(rows)) if rows else 0
            ok = ok and std == len(mons) - rk
        res.record(ok, i)
    return res


# -- structure audits and the session corpus --------------------------------------------------------


@_timed
def construction_audits(count: int, seed: int, F=F101) -> SuiteResult:
    """Every construction returns an algebra whose structure constants pass the full audit."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("associativity and commutativity audits of all constructions")
    k = residue_field(F)
    for i in range(count):
        built = []
        R = rg.random_graded_algebra(F, rng, max_length=8)
        S = rg.random_graded_algebra(F, rng, max_length=8)
        G = rg.random_gorenstein(F, rng, max_length=8)
        H = rg.random_gorenstein(F, rng, max_length=8)
        built.append(fiber_product(augmentation(R, k), augmentation(S, k)).P)
        built.append(rg.random_surjection(R, rng).target)
        built.append(amalgamated_duplication(R, R.socle_basis).P)
        built.append(trivial_extension(R, dual_canonical_module(R, R.a_invariant + 1)))
        built.append(regrade(R, 2))
        built.append(connected_sum_over_k(G, H)[0].Q)
        built.append(split_socle(built[0]).fiber.P)
        Rc, Sc, Tc, eR, eS = rg.random_common_quotient(F, rng, max_length=8)
        built.append(fiber_product(eR, eS).P)
        ok = True
        for A in built:
            try:
                A.audit()
            except AuditFailure:
                ok = False
        res.record(ok, i)
    return res


def corpus_paths() -> list:
    return sorted(p for p in resources.files("gorsum").joinpath("corpus").iterdir() if p.name.endswith(".gs"))


@_timed
def corpus_roundtrip() -> SuiteResult:
    """``parse(print(parse(text))) == parse(text)`` for every bundled session."""
    res = SuiteResult("session print/parse round trip on the bundled corpus")
    for path in corpus_paths():
        ast = parse_session(path.read_text())
        res.record(parse_session(format_session(ast)) == ast, path.name)
    return res


# -- the command line suite ----------------------------------------------------------------------


def run_random_suite(count: int, seed: int, order: int = 6) -> list:
    return [
        fiber_product_identities(count, seed),
        connected_sum_identities(count, seed + 1),
        a_invariant_gate(count, seed + 2),
        dress_kramer(count, seed + 3, order),
        golod_bound(count, seed + 4, order),
        golod_socle_quotients(count, seed + 5, order),
        golod_factorization(count, seed + 9, order),
        connected_sum_poincare(count, seed + 6, order),
        colength_agreement(count, seed + 7),
        groebner_vs_slices(count, seed + 8),
        construction_audits(count, seed + 10),
        corpus_roundtrip(),
    ]
