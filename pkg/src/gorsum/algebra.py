"""Finite-dimensional local algebras given by structure constants.

Conventions used throughout the package:

* basis index 0 is the unit and the remaining basis vectors span the maximal
  ideal (in graded mode they are homogeneous of positive degree);
* ``mult[i, j, k]`` is the coefficient of ``e_k`` in ``e_i * e_j``;
* elements are coordinate vectors; linear maps are matrices acting on columns;
* ``lmul(i) = mult[i].T`` is multiplication by ``e_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg as la
from .fields import Field
from .poly import (NotArtinian, PolyRing, Polynomial, format_monomial, groebner_basis_in,
                   normal_form, quotient_monomial_basis)


class NotConnected(ValueError):
    pass


class UnitIdeal(ValueError):
    pass


class GradingError(ValueError):
    pass


class AuditFailure(AssertionError):
    pass


class NotModuleLinear(ValueError):
    pass


def bilinear_products(F: Field, mult: np.ndarray, X: np.ndarray, Y: np.ndarray | None = None) -> np.ndarray:
    """``out[i, j] = X[:, i] * Y[:, j]`` in the algebra with structure ``mult``."""
    if Y is None:
        Y = X
    n = mult.shape[0]
    a, b = X.shape[1], Y.shape[1]
    if a == 0 or b == 0:
        return F.zeros((a, b, n))
    t = F.normalize(X.T @ mult.reshape(n, n * n)).reshape(a, n, n)
    out = F.normalize(np.transpose(t, (0, 2, 1)) @ Y)  # (a, n_k, b)
    return np.ascontiguousarray(np.transpose(out, (0, 2, 1)))


class FDAlgebra:
    """A commutative local algebra of finite dimension over ``field``."""

    def __init__(self, field: Field, mult, degrees=None, labels=None, name: str | None = None):
        mult = la.coerce(field, mult)
        n = mult.shape[0]
        if mult.shape != (n, n, n) or n == 0:
            raise ValueError(f"structure constants must be a nonempty cube, got {mult.shape}")
        self.field = field
        self.dim = n
        self.mult = mult
        self.degrees = None if degrees is None else [int(d) for d in degrees]
        if self.degrees is not None:
            if len(self.degrees) != n:
                raise ValueError("one degree per basis vector")
            if self.degrees[0] != 0 or any(d <= 0 for d in self.degrees[1:]):
                raise NotConnected("graded mode needs deg e_0 = 0 and positive degrees elsewhere")
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(n)]
        self.name = name
        self.presentation = None

    def __repr__(self):
        nm = self.name or "FDAlgebra"
        mode = "graded" if self.graded else "filtered"
        return f"<{nm}: dim {self.dim} over {self.field}, {mode}>"

    @property
    def graded(self) -> bool:
        return self.degrees is not None

    # -- elements -----------------------------------------------------------

    def unit(self) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[0] = self.field.one
        return v

    def zero(self) -> np.ndarray:
        return self.field.zeros(self.dim)

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def lmul(self, i: int) -> np.ndarray:
        return self._lmats[i]

    @cached_property
    def _lmats(self):
        return np.ascontiguousarray(np.transpose(self.mult, (0, 2, 1)))

    def mul_matrix(self, a) -> np.ndarray:
        """Matrix of multiplication by the element ``a``."""
        a = la.coerce(self.field, a)
        n = self.dim
        return self.field.normalize(np.tensordot(a, self._lmats, axes=1)) if n else a

    def mul(self, a, b) -> np.ndarray:
        return la.matmul(self.field, self.mul_matrix(a), la.coerce(self.field, b))

    def power(self, a, k: int) -> np.ndarray:
        out = self.unit()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def element_degree(self, v):
        """Degree of a homogeneous nonzero element, else ``None``."""
        if not self.graded:
            return None
        ds = {self.degrees[i] for i in np.flatnonzero(np.asarray(v) != 0)}
        return ds.pop() if len(ds) == 1 else None

    # -- subspaces ----------------------------------------------------------

    def maximal_ideal_basis(self) -> np.ndarray:
        return self.field.identity(self.dim)[:, 1:]

    def products(self, X, Y=None) -> np.ndarray:
        return bilinear_products(self.field, self.mult, X, Y)

    def ideal_span(self, gens) -> np.ndarray:
        """Basis columns of the ideal generated by the columns of ``gens``."""
        G = la.coerce(self.field, gens)
        if G.ndim == 1:
            G = G.reshape(-1, 1)
        if G.shape[1] == 0:
            return self.field.zeros((self.dim, 0))
        prods = self.products(self.field.identity(self.dim), G)  # (n, g, n)
        cols = prods.reshape(-1, self.dim).T
        return self._sorted_basis(la.column_basis(self.field, np.concatenate([G, cols], axis=1)))

    def _sorted_basis(self, B):
        if B.shape[1] == 0 or not self.graded:
            return B
        ideg = [self.element_degree(B[:, j]) for j in range(B.shape[1])]
        if any(d is None for d in ideg):
            return B
        return B[:, np.argsort(ideg, kind="stable")]

    @cached_property
    def mm_basis(self) -> np.ndarray:
        """Basis of the square of the maximal ideal."""
        m = self.maximal_ideal_basis()
        if m.shape[1] == 0:
            return m
        P = self.products(m)
        return la.column_basis(self.field, P.reshape(-1, self.dim).T)

    @cached_property
    def generator_indices(self) -> list:
        """Basis indices whose classes form a basis of m/m^2 (lowest degree first)."""
        mm = self.mm_basis
        k = mm.shape[1]
        M = np.concatenate([mm, self.maximal_ideal_basis()], axis=1)
        piv = la.independent_columns(self.field, M)
        return [c - k + 1 for c in piv if c >= k]

    @property
    def edim(self) -> int:
        return len(self.generator_indices)

    @cached_property
    def socle_basis(self) -> np.ndarray:
        gens = self.generator_indices
        if not gens:
            return self.field.identity(self.dim)
        stacked = np.concatenate([self.lmul(g) for g in gens], axis=0)
        return self._sorted_basis(la.nullspace(self.field, stacked))

    @property
    def type(self) -> int:
        return self.socle_basis.shape[1]

    @property
    def is_gorenstein(self) -> bool:
        return self.type == 1

    @property
    def length(self) -> int:
        return self.dim

    @property
    def hilbert(self):
        if not self.graded:
            return None
        h = [0] * (max(self.degrees) + 1)
        for d in self.degrees:
            h[d] += 1
        return h

    @property
    def a_invariant(self):
        return max(self.degrees) if self.graded else None

    def loewy_series(self):
        """dim m^i / m^(i+1) for i = 0, 1, ... (defined in both modes)."""
        dims = [self.dim]
        cur = self.maximal_ideal_basis()
        while cur.shape[1]:
            dims.append(cur.shape[1])
            nxt = self.products(self.maximal_ideal_basis(), cur).reshape(-1, self.dim).T
            nxt = la.column_basis(self.field, nxt)
            if nxt.shape[1] == cur.shape[1]:
                raise NotConnected("maximal ideal is not nilpotent")
            cur = nxt
        dims.append(0)
        return [a - b for a, b in zip(dims, dims[1:])]

    # -- checks -------------------------------------------------------------

    def audit(self) -> None:
        """Exhaustive unit, commutativity, associativity, grading and locality check."""
        F, n, M = self.field, self.dim, self.mult
        if not np.array_equal(M[0], F.identity(n)) or not np.array_equal(M[:, 0, :], F.identity(n)):
            raise AuditFailure("e_0 is not the unit")
        if not np.array_equal(M, np.transpose(M, (1, 0, 2))):
            raise AuditFailure("multiplication is not commutative")
        X = F.normalize(M.reshape(n * n, n) @ M.reshape(n, n * n)).reshape(n, n, n, n)
        if not np.array_equal(X, np.transpose(X, (2, 0, 1, 3))):
            raise AuditFailure("multiplication is not associative")
        if self.graded:
            deg = np.array(self.degrees)
            nz = np.argwhere(M != 0)
            if nz.size and np.any(deg[nz[:, 0]] + deg[nz[:, 1]] != deg[nz[:, 2]]):
                raise AuditFailure("multiplication does not respect degrees")
        else:
            self.loewy_series()
        if n > 1 and np.any(M[1:, 1:, 0] != 0):
            raise AuditFailure("span of e_1.. is not an ideal (not local)")

    def invariants(self) -> "Invariants":
        return Invariants(
            length=self.dim, hilbert=self.hilbert, edim=self.edim,
            socle_basis=self.socle_basis, type=self.type,
            is_gorenstein=self.is_gorenstein, a_invariant=self.a_invariant)

    # -- conversions --------------------------------------------------------

    def regular_module(self) -> "FDModule":
        return FDModule(self, [self.lmul(i) for i in range(self.dim)], degrees=self.degrees,
                        embedding=self.field.identity(self.dim))

    def residue_module(self) -> "FDModule":
        F = self.field
        act = [F.identity(1)] + [F.zeros((1, 1)) for _ in range(self.dim - 1)]
        return FDModule(self, act, degrees=[0] if self.graded else None)

    def ideal(self, gens) -> "FDModule":
        return submodule(self.regular_module(), self.ideal_span(gens))


@dataclass
class Invariants:
    length: int
    hilbert: list | None
    edim: int
    socle_basis: np.ndarray
    type: int
    is_gorenstein: bool
    a_invariant: int | None

    def as_dict(self):
        return {"length": self.length, "hilbert": self.hilbert, "edim": self.edim,
                "type": self.type, "is_gorenstein": self.is_gorenstein,
                "a_invariant": self.a_invariant}


def invariants(A: FDAlgebra) -> Invariants:
    return A.invariants()


class FDModule:
    """A finite-dimensional module: ``action[i]`` is the matrix of ``e_i``."""

    def __init__(self, algebra: FDAlgebra, action, degrees=None, embedding=None, name=None):
        F = algebra.field
        self.algebra = algebra
        self.field = F
        self.action = [la.coerce(F, a) for a in action]
        if len(self.action) != algebra.dim:
            raise ValueError("one action matrix per algebra basis vector")
        self.dim = self.action[0].shape[0]
        self.degrees = None if degrees is None else [int(d) for d in degrees]
        self.embedding = embedding
        self.name = name

    def __repr__(self):
        return f"<FDModule dim {self.dim} over {self.algebra!r}>"

    def act_matrix(self, a) -> np.ndarray:
        a = la.coerce(self.field, a)
        stack = np.stack(self.action)
        return self.field.normalize(np.tensordot(a, stack, axes=1))

    def act(self, a, v) -> np.ndarray:
        return la.matmul(self.field, self.act_matrix(a), la.coerce(self.field, v))

    def audit(self) -> None:
        F, A = self.field, self.algebra
        if not np.array_equal(self.action[0], F.identity(self.dim)):
            raise AuditFailure("unit does not act as identity")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = la.matmul(F, self.action[i], self.action[j])
                rhs = self.act_matrix(A.mult[i, j])
                if not np.array_equal(lhs, rhs):
                    raise AuditFailure(f"action not associative at ({i},{j})")

    def socle_basis(self) -> np.ndarray:
        gens = self.algebra.generator_indices
        if not gens or self.dim == 0:
            return self.field.identity(self.dim)
        return la.nullspace(self.field, np.concatenate([self.action[g] for g in gens], axis=0))

    def minimal_generator_count(self) -> int:
        """dim M / mM."""
        F = self.field
        if self.dim == 0:
            return 0
        mM = np.concatenate([self.action[i] for i in range(1, self.algebra.dim)], axis=1) \
            if self.algebra.dim > 1 else F.zeros((self.dim, 0))
        return self.dim - la.rank(F, mM)

    def is_cyclic(self) -> bool:
        return self.minimal_generator_count() <= 1


def submodule(M: FDModule, basis) -> FDModule:
    """Submodule spanned by the columns ``basis`` (must be closed under the action)."""
    F = M.field
    sub = la.Subspace(F, basis, ambient=M.dim, independent=True)
    try:
        act = [sub.coordinates(la.matmul(F, a, sub.basis)) for a in M.action]
    except la.NotInSubspace as exc:
        raise NotModuleLinear("subspace is not a submodule") from exc
    if sub.dim == 0:
        act = [F.zeros((0, 0)) for _ in M.action]
    emb = sub.basis if M.embedding is None else la.matmul(F, M.embedding, sub.basis)
    degrees = None
    if M.degrees is not None and sub.dim:
        degrees = []
        for j in range(sub.dim):
            ds = {M.degrees[i] for i in np.flatnonzero(sub.basis[:, j] != 0)}
            if len(ds) != 1:
                degrees = None
                break
            degrees.append(ds.pop())
    return FDModule(M.algebra, act, degrees=degrees, embedding=emb)


def quotient_module(M: FDModule, sub_basis) -> FDModule:
    """``M / N`` on a complement of ``N`` chosen among the standard basis vectors."""
    F = M.field
    proj, keep = _complement_projection(F, la.coerce(F, sub_basis), M.dim)
    act = [la.matmul(F, proj, a[:, keep]) for a in M.action]
    degrees = [M.degrees[i] for i in keep] if M.degrees is not None else None
    return FDModule(M.algebra, act, degrees=degrees)


def restrict_module(M: FDModule, phi: "AlgebraMorphism") -> FDModule:
    """View an ``M`` over ``phi.target`` as a module over ``phi.source``."""
    if phi.target is not M.algebra:
        raise ValueError("morphism target must be the module's algebra")
    act = [M.act_matrix(phi.matrix[:, i]) for i in range(phi.source.dim)]
    return FDModule(phi.source, act, degrees=M.degrees)


def algebra_as_module(phi: "AlgebraMorphism") -> FDModule:
    """``phi.target`` as a module over ``phi.source`` (e.g. R/soc R over R)."""
    return restrict_module(phi.target.regular_module(), phi)


def _complement_projection(F: Field, S: np.ndarray, n: int):
    """Projection onto coordinates ``keep`` of ``F^n / span(S)``.

    The complement is spanned by standard basis vectors; pivots are taken from
    the highest index down so low-index vectors (the unit, low degrees) survive.
    """
    if S.ndim == 1:
        S = S.reshape(-1, 1)
    if S.shape[1] == 0:
        return F.identity(n), list(range(n))
    R, piv = la.rref(F, S.T[:, ::-1].copy())
    R = R[: len(piv), ::-1]
    pivots = [n - 1 - c for c in piv]
    keep = [j for j in range(n) if j not in set(pivots)]
    full = F.identity(n)
    sel = F.zeros((len(pivots), n))
    for r, pc in enumerate(pivots):
        sel[r, pc] = F.one
    full = F.normalize(full - R.T @ sel)
    return np.ascontiguousarray(full[keep, :]), keep


def quotient(A: FDAlgebra, ideal_gens) -> tuple:
    """``A / I`` for the ideal generated by ``ideal_gens`` and the surjection onto it."""
    F = A.field
    I = A.ideal_span(ideal_gens)
    if I.shape[1] and (np.any(I[0, :] != 0) or I.shape[1] >= A.dim):
        raise UnitIdeal("ideal is not proper")
    proj, keep = _complement_projection(F, I, A.dim)
    mult = np.ascontiguousarray(A.mult[np.ix_(keep, keep)])
    mult = F.normalize(mult @ proj.T)
    degrees = None
    if A.graded and _is_graded_subspace(A, I):
        degrees = [A.degrees[i] for i in keep]
    B = FDAlgebra(F, mult, degrees=degrees, labels=[A.labels[i] for i in keep])
    pi = AlgebraMorphism(A, B, proj, check=False)
    pi.section = np.ascontiguousarray(F.identity(A.dim)[:, keep])
    return B, pi


def _is_graded_subspace(A: FDAlgebra, S: np.ndarray) -> bool:
    if S.shape[1] == 0:
        return True
    sub = la.Subspace(A.field, S, independent=True)
    deg = np.array(A.degrees)
    for d in sorted(set(A.degrees)):
        part = S.copy()
        part[deg != d, :] = 0
        if not sub.contains(part):
            return False
    return True


def annihilator(A: FDAlgebra, gens) -> FDModule:
    """The ideal ``(0 : gens)``."""
    G = la.coerce(A.field, gens)
    if G.ndim == 1:
        G = G.reshape(-1, 1)
    if G.shape[1] == 0:
        return A.ideal(A.field.identity(A.dim))
    stacked = np.concatenate([A.mul_matrix(G[:, j]) for j in range(G.shape[1])], axis=0)
    N = A._sorted_basis(la.nullspace(A.field, stacked))
    return submodule(A.regular_module(), N)


def annihilator_basis(A: FDAlgebra, gens) -> np.ndarray:
    return annihilator(A, gens).embedding


def dual_canonical_module(A: FDAlgebra, shift: int = 0) -> FDModule:
    """``Hom_k(A, k)`` with ``(a f)(b) = f(ab)``; ``e_i^*`` has degree ``shift - deg e_i``."""
    act = [np.ascontiguousarray(A.lmul(i).T) for i in range(A.dim)]
    degrees = [shift - d for d in A.degrees] if A.graded else None
    return FDModule(A, act, degrees=degrees, name="E")


def trivial_extension(A: FDAlgebra, M: FDModule) -> FDAlgebra:
    """``A (+) M`` with ``M * M = 0``; graded when all degrees of ``M`` are positive."""
    F = A.field
    n, m = A.dim, M.dim
    N = n + m
    mult = F.zeros((N, N, N))
    mult[:n, :n, :n] = A.mult
    for i in range(n):
        act = M.action[i]
        mult[i, n:, n:] = act.T
        mult[n:, i, n:] = act.T
    degrees = None
    if A.graded and M.degrees is not None and all(d > 0 for d in M.degrees):
        degrees = list(A.degrees) + list(M.degrees)
    labels = list(A.labels) + [f"m{j}" for j in range(m)]
    return FDAlgebra(F, mult, degrees=degrees, labels=labels)


# -- morphisms ----------------------------------------------------------------


class MorphismError(ValueError):
    pass


class AlgebraMorphism:
    """Unital multiplicative map; ``matrix`` has shape (target.dim, source.dim)."""

    def __init__(self, source: FDAlgebra, target: FDAlgebra, matrix, check: bool = True):
        self.source = source
        self.target = target
        self.matrix = la.coerce(source.field, matrix)
        if self.matrix.shape != (target.dim, source.dim):
            raise MorphismError(f"matrix shape {self.matrix.shape} does not match dimensions")
        self.section = None  # linear right inverse, set for quotient maps
        if check:
            self.check()

    def __repr__(self):
        return f"<AlgebraMorphism {self.source!r} -> {self.target!r}>"

    def check(self) -> None:
        F, A, B = self.source.field, self.source, self.target
        M = self.matrix
        if not np.array_equal(M[:, 0], B.unit()):
            raise MorphismError("map is not unital")
        lhs = la.matmul(F, A.mult.reshape(-1, A.dim), M.T)  # phi(e_i e_j)
        rhs = B.products(M).reshape(-1, B.dim)
        if not np.array_equal(lhs, rhs):
            raise MorphismError("map is not multiplicative")
        if A.graded and B.graded:
            for j in range(A.dim):
                for i in np.flatnonzero(M[:, j] != 0):
                    if B.degrees[i] != A.degrees[j]:
                        raise MorphismError("map does not preserve degrees")
        if A.dim > 1 and np.any(M[0, 1:] != 0):
            raise MorphismError("map is not local")

    def __call__(self, v) -> np.ndarray:
        return la.matmul(self.source.field, self.matrix, la.coerce(self.source.field, v))

    @property
    def rank(self) -> int:
        return la.rank(self.source.field, self.matrix)

    @property
    def is_surjective(self) -> bool:
        return self.rank == self.target.dim

    @property
    def is_injective(self) -> bool:
        return self.rank == self.source.dim

    def kernel_basis(self) -> np.ndarray:
        return self.source._sorted_basis(la.nullspace(self.source.field, self.matrix))

    def compose(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """``self o other``."""
        if other.target is not self.source:
            raise MorphismError("morphisms do not compose")
        return AlgebraMorphism(other.source, self.target,
                               la.matmul(self.source.field, self.matrix, other.matrix), check=False)


def induced_map(kappa: AlgebraMorphism, f: AlgebraMorphism) -> AlgebraMorphism:
    """The map ``g`` with ``g o kappa = f`` for a surjection ``kappa`` killed by ``f``."""
    F = kappa.source.field
    if f.source is not kappa.source:
        raise MorphismError("maps must share a source")
    K = kappa.kernel_basis()
    if K.shape[1] and np.any(la.matmul(F, f.matrix, K) != 0):
        raise MorphismError("map does not vanish on the kernel")
    sec = kappa.section
    if sec is None:
        sec = la.solve(F, kappa.matrix, F.identity(kappa.target.dim))
        if sec is None:
            raise MorphismError("first map is not surjective")
    return AlgebraMorphism(kappa.target, f.target, la.matmul(F, f.matrix, sec))


def identity_morphism(A: FDAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(A, A, A.field.identity(A.dim), check=False)


def augmentation(A: FDAlgebra, k: FDAlgebra | None = None) -> AlgebraMorphism:
    k = k or residue_field(A.field)
    M = A.field.zeros((1, A.dim))
    M[0, 0] = A.field.one
    return AlgebraMorphism(A, k, M, check=False)


def residue_field(F: Field) -> FDAlgebra:
    mult = F.zeros((1, 1, 1))
    mult[0, 0, 0] = F.one
    return FDAlgebra(F, mult, degrees=[0], labels=["1"], name="k")


def regrade(A: FDAlgebra, factor: int) -> FDAlgebra:
    """Same algebra with every degree multiplied by ``factor``."""
    if not A.graded or factor < 1:
        raise GradingError("regrading needs a graded algebra and a positive factor")
    B = FDAlgebra(A.field, A.mult, degrees=[d * factor for d in A.degrees], labels=A.labels, name=A.name)
    B.presentation = A.presentation
    return B


class ModuleMorphism:
    """Linear map ``source -> target`` commuting with the actions.

    When ``base_map`` (an algebra map ``target.algebra -> source.algebra``) is
    given, linearity means ``f(base_map(r) v) = r f(v)`` for every basis ``r``.
    """

    def __init__(self, source: FDModule, target: FDModule, matrix, base_map: AlgebraMorphism | None = None,
                 check: bool = True):
        self.source = source
        self.target = target
        self.base_map = base_map
        self.matrix = la.coerce(source.field, matrix)
        if self.matrix.shape != (target.dim, source.dim):
            raise MorphismError(f"matrix shape {self.matrix.shape} does not match dimensions")
        if check and not self.is_linear():
            raise NotModuleLinear("map does not commute with the module actions")

    def is_linear(self) -> bool:
        F = self.source.field
        f = self.matrix
        if self.base_map is None:
            if self.source.algebra is not self.target.algebra:
                raise MorphismError("modules over different algebras need a base map")
            pairs = zip(self.source.action, self.target.action)
        else:
            if self.base_map.source is not self.target.algebra or self.base_map.target is not self.source.algebra:
                raise MorphismError("base map must go from the target's algebra to the source's")
            pairs = ((self.source.act_matrix(self.base_map.matrix[:, r]), self.target.action[r])
                     for r in range(self.target.algebra.dim))
        return all(np.array_equal(la.matmul(F, f, a), la.matmul(F, b, f)) for a, b in pairs)

    @property
    def rank(self) -> int:
        return la.rank(self.source.field, self.matrix)

    @property
    def is_injective(self) -> bool:
        return self.rank == self.source.dim

    @property
    def is_surjective(self) -> bool:
        return self.rank == self.target.dim


def module_hom_space(M: FDModule, N: FDModule, base_map: AlgebraMorphism | None = None) -> list:
    """Basis of ``Hom(M, N)`` as a list of matrices (``N.dim x M.dim``).

    Solves ``f a_M = a_N f`` for all action pairs as a linear system in the
    entries of ``f`` (row-major).
    """
    F = M.field
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return []
    if base_map is None:
        pairs = list(zip(M.action, N.action))
    else:
        pairs = [(M.act_matrix(base_map.matrix[:, r]), N.action[r]) for r in range(N.algebra.dim)]
    # only generators of the acting algebra are needed
    gens = N.algebra.generator_indices if base_map is not None else M.algebra.generator_indices
    pairs = [pairs[g] for g in gens]
    if not pairs:
        return [F.identity(n * m)[:, j].reshape(n, m) for j in range(n * m)]
    In, Im = F.identity(n), F.identity(m)
    blocks = []
    for a, b in pairs:
        # vec_row(f a) = (I_n kron a^T) vec_row(f);  vec_row(b f) = (b kron I_m) vec_row(f)
        blocks.append(F.normalize(np.kron(In, a.T) - np.kron(b, Im)))
    N_ = la.nullspace(F, np.concatenate(blocks, axis=0))
    return [np.ascontiguousarray(N_[:, j].reshape(n, m)) for j in range(N_.shape[1])]


# -- presentations -------------------------------------------------------------


@dataclass
class PresentationMap:
    """Links a polynomial presentation to the algebra built from it."""

    ring: PolyRing
    relations: list
    algebra: FDAlgebra
    basis_monomials: list
    gb: object
    _index: dict = field(default_factory=dict)

    def element(self, f: Polynomial) -> np.ndarray:
        if isinstance(f, str):
            f = self.ring.parse(f)
        f = self.ring(f)
        r = normal_form(f, self.gb)
        v = self.algebra.zero()
        for m, c in r.terms.items():
            v[self._index[m]] = c
        return v

    def variable_images(self) -> list:
        return [self.element(x) for x in self.ring.gens()]


def algebra_from_presentation(ring: PolyRing, relations, graded: bool | None = None, name=None):
    """Build ``ring / (relations)`` and its :class:`PresentationMap`.

    ``graded=None`` chooses graded mode exactly when every relation is
    homogeneous for the variable weights.
    """
    F = ring.field
    relations = [ring.parse(r) if isinstance(r, str) else ring(r) for r in relations]
    homog = all(r.is_homogeneous() for r in relations)
    if graded is None:
        graded = homog
    elif graded and not homog:
        raise GradingError("graded mode requires homogeneous relations")
    gb = groebner_basis_in(ring, relations)
    monos = quotient_monomial_basis(gb)
    if not monos:
        raise NotConnected("presentation defines the zero ring")
    if monos[0] != ring.one_mono():
        raise NotConnected("1 is not a standard monomial")
    index = {m: i for i, m in enumerate(monos)}
    n = len(monos)
    mult = F.zeros((n, n, n))
    cache = {}
    for i, a in enumerate(monos):
        for j in range(i, n):
            b = monos[j]
            prod = tuple(x + y for x, y in zip(a, b))
            if prod not in cache:
                if prod in index:
                    cache[prod] = {prod: F.one}
                else:
                    cache[prod] = normal_form(ring.monomial(prod), gb).terms
            for mono, c in cache[prod].items():
                mult[i, j, index[mono]] = c
                mult[j, i, index[mono]] = c
    labels = [format_monomial(ring, m) or "1" for m in monos]
    degrees = [ring.degree(m) for m in monos] if graded else None
    A = FDAlgebra(F, mult, degrees=degrees, labels=labels, name=name)
    if not graded:
        if any(r.constant_coeff() != 0 for r in gb.polys):
            raise NotConnected("relations are not contained in the ideal of the variables")
        A.loewy_series()  # raises NotConnected if the quotient is not local
    pres = PresentationMap(ring, relations, A, monos, gb, index)
    A.presentation = pres
    return A, pres


def morphism_from_images(pres: PresentationMap, target: FDAlgebra, images, check: bool = True):
    """Algebra map out of a presented algebra given variable images in ``target``.

    Raises :class:`MorphismError` when a relation does not vanish on the images.
    """
    imgs = [la.coerce(target.field, v) for v in images]
    if len(imgs) != pres.ring.nvars:
        raise MorphismError("one image per variable is required")
    for rel in pres.relations:
        if np.any(eval_polynomial(rel, target, imgs) != 0):
            raise MorphismError(f"relation {rel} does not vanish on the images")
    cols = [eval_polynomial(pres.ring.monomial(m), target, imgs) for m in pres.basis_monomials]
    M = np.stack(cols, axis=1) if cols else target.field.zeros((target.dim, 0))
    return AlgebraMorphism(pres.algebra, target, M, check=check)


def eval_polynomial(f: Polynomial, A: FDAlgebra, images) -> np.ndarray:
    """Evaluate ``f`` at variable values ``images`` (coordinate vectors in ``A``)."""
    F = A.field
    pows = {}

    def power(i, e):
        if (i, e) not in pows:
            pows[(i, e)] = A.unit() if e == 0 else A.mul(power(i, e - 1), images[i])
        return pows[(i, e)]

    out = A.zero()
    for mono, c in f.terms.items():
        v = A.unit()
        for i, e in enumerate(mono):
            if e:
                v = A.mul(v, power(i, e))
        out = F.normalize(out + v * c) if F.dtype is not object else out + v * c
    return out


@dataclass
class IsoCheck:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def check_presentation_iso(ring: PolyRing, relations, target: FDAlgebra, images) -> IsoCheck:
    """Certify ``ring/(relations) -> target``, ``x_i -> images[i]``, is an isomorphism."""
    relations = [ring.parse(r) if isinstance(r, str) else ring(r) for r in relations]
    imgs = [la.coerce(target.field, v) for v in images]
    if len(imgs) != ring.nvars:
        return IsoCheck(False, f"expected {ring.nvars} images, got {len(imgs)}")
    for rel in relations:
        if np.any(eval_polynomial(rel, target, imgs) != 0):
            return IsoCheck(False, f"relation failure: {rel} does not vanish on the images")
    try:
        A, pres = algebra_from_presentation(ring, relations, graded=None if target.graded else False)
    except NotArtinian:
        return IsoCheck(False, "dimension mismatch: claimed quotient is not artinian")
    if A.dim != target.dim:
        return IsoCheck(False, f"dimension mismatch: claimed {A.dim}, target {target.dim}")
    try:
        phi = morphism_from_images(pres, target, imgs, check=False)
    except MorphismError as exc:
        return IsoCheck(False, f"relation failure: {exc}")
    if not phi.is_surjective:
        return IsoCheck(False, "images do not generate the target (map not bijective)")
    if target.graded:
        if not A.graded:
            return IsoCheck(False, "claimed presentation is not graded")
        for j, m in enumerate(pres.basis_monomials):
            for i in np.flatnonzero(phi.matrix[:, j] != 0):
                if target.degrees[i] != ring.degree(m):
                    return IsoCheck(False, "map does not preserve degrees")
    return IsoCheck(True, "isomorphism certified")


def is_isomorphic_via(A: FDAlgebra, B: FDAlgebra, matrix) -> bool:
    """Check a given linear bijection is an algebra isomorphism."""
    try:
        phi = AlgebraMorphism(A, B, matrix)
    except MorphismError:
        return False
    return A.dim == B.dim and phi.is_surjective


def from_structure(F: Field, mult, degrees=None, labels=None, audit=True) -> FDAlgebra:
    A = FDAlgebra(F, mult, degrees=degrees, labels=labels)
    if audit:
        A.audit()
    return A
