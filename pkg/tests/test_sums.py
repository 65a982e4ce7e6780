import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gorsum import randgen as rg
from gorsum.algebra import augmentation, check_presentation_iso, identity_morphism, morphism_from_images, residue_field
from gorsum.fields import GF, QQ
from gorsum.poly import PolyRing
from gorsum.sums import (AInvariantMismatch, ConnectedSumDiagram, IotaNotInjective, IotaNotModuleLinear,
                         NotGorensteinInput, NotSurjective, TargetMismatch, WNotInSocleImage, ZeroKernel,
                         amalgamated_duplication, connected_sum, connected_sum_over_k, fiber_product,
                         gorenstein_connected_sum, split_socle)

from helpers import alg, present

F = GF(101)


def _cubes(field):
    R, pR = present(field, ["x"], ["x^3"])
    S, pS = present(field, ["y"], ["y^3"])
    return R, pR, S, pS


def _sum_over_k(field, iR_text, iS_text):
    R, pR, S, pS = _cubes(field)
    k = residue_field(field)
    V = k.regular_module()
    V.degrees = [2]
    d = ConnectedSumDiagram(R, S, k, V, augmentation(R, k), augmentation(S, k),
                            pR.element(iR_text).reshape(-1, 1), pS.element(iS_text).reshape(-1, 1))
    return connected_sum(d)


def test_fiber_product_over_k_of_cubes():
    R, pR, S, pS = _cubes(QQ)
    k = residue_field(QQ)
    fp = fiber_product(augmentation(R, k), augmentation(S, k))
    P = fp.P
    assert P.hilbert == [1, 2, 2] and P.type == 2
    a, b = fp.element(pR.element("x"), S.zero()), fp.element(R.zero(), pS.element("y"))
    ring = PolyRing(QQ, ["a", "b"])
    assert check_presentation_iso(ring, ["a^3", "b^3", "a*b"], P, [a, b])


def test_connected_sum_sign_matters():
    out = _sum_over_k(QQ, "x^2", "-y^2")
    Q = out.Q
    ring = PolyRing(QQ, ["a", "b"])
    a = out.fiber.element(out.fiber.R.basis_vector(1), out.fiber.S.zero())
    b = out.fiber.element(out.fiber.R.zero(), out.fiber.S.basis_vector(1))
    assert check_presentation_iso(ring, ["a^2 - b^2", "a*b"], Q, [out.kappa(a), out.kappa(b)])
    assert Q.is_gorenstein and Q.dim == 4


def test_diagram_validation_errors():
    R, pR, S, pS = _cubes(F)
    k = residue_field(F)
    V = k.regular_module()
    eR, eS = augmentation(R, k), augmentation(S, k)
    with pytest.raises(IotaNotInjective):
        connected_sum(ConnectedSumDiagram(R, S, k, V, eR, eS, R.zero().reshape(-1, 1), pS.element("y^2").reshape(-1, 1)))
    with pytest.raises(IotaNotModuleLinear):
        connected_sum(ConnectedSumDiagram(R, S, k, V, eR, eS, R.unit().reshape(-1, 1), pS.element("y^2").reshape(-1, 1)))
    T, pT = present(F, ["t"], ["t^2"])
    with pytest.raises(TargetMismatch):
        fiber_product(eR, identity_morphism(T))
    R2, pR2 = present(F, ["x"], ["x^3"], graded=False)
    T2, pT2 = present(F, ["t"], ["t^2"], graded=False)
    with pytest.raises(NotSurjective):
        fiber_product(identity_morphism(R2), morphism_from_images(pT2, R2, [pR2.element("x^2")]))


def test_gorenstein_inputs_required():
    k = residue_field(F)
    A = alg(F, ["x", "y"], ["x^2", "x*y", "y^2"])
    G = alg(F, ["z"], ["z^3"])
    with pytest.raises(NotGorensteinInput):
        gorenstein_connected_sum(A, G, k, augmentation(A, k), augmentation(G, k))
    with pytest.raises(ZeroKernel):
        gorenstein_connected_sum(k, G, k, augmentation(k, k), augmentation(G, k))


def test_a_invariant_gate():
    R, _, _, _ = _cubes(F)
    S = alg(F, ["y"], ["y^4"])
    k = residue_field(F)
    with pytest.raises(AInvariantMismatch):
        gorenstein_connected_sum(R, S, k, augmentation(R, k), augmentation(S, k), graded=True)
    out, _ = connected_sum_over_k(R, S)  # rescaled gradings meet at degree 6
    assert out.Q.graded and out.Q.is_gorenstein and out.Q.dim == 5
    out2, _ = connected_sum_over_k(R, S, graded=False, align=False)
    assert not out2.Q.graded and out2.Q.dim == 5


def test_zero_connected_sum_for_length_two():
    R = alg(F, ["x"], ["x^2"])
    S = alg(F, ["y"], ["y^2"])
    out, _ = connected_sum_over_k(R, S)
    assert out.Q.dim == 2


def test_amalgamated_duplication_length():
    R = alg(F, ["x", "y"], ["x^2", "y^2"])
    fp = amalgamated_duplication(R, R.socle_basis)
    assert fp.P.dim == 2 * R.dim - (R.dim - 1)
    fp.P.audit()


def test_split_socle():
    P, pres = present(F, ["x", "y", "z"], ["x^3", "x*y", "y^2", "x*z", "y*z", "z^2"])
    # y and z are socle elements outside m^2; split off C = k[y,z]/(y,z)^2
    sp = split_socle(P)
    assert sp.C.dim == 3 and sp.B.hilbert == [1, 1, 1]
    assert sp.iso.is_surjective and sp.iso.is_injective
    with pytest.raises(WNotInSocleImage):
        split_socle(P, pres.element("x"))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32))
def test_fiber_product_length_identity(seed):
    rng = np.random.default_rng(seed)
    R, S, T, eR, eS = rg.random_common_quotient(F, rng, max_length=10)
    fp = fiber_product(eR, eS)
    assert fp.P.dim + T.dim == R.dim + S.dim
    assert fp.rho.is_surjective and fp.sigma.is_surjective
    fp.P.audit()


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32))
def test_gorenstein_connected_sums_are_gorenstein(seed):
    rng = np.random.default_rng(seed)
    R = rg.random_gorenstein(F, rng, max_length=8)
    S = rg.random_gorenstein(F, rng, max_length=8)
    out, d = connected_sum_over_k(R, S)
    assert out.Q.is_gorenstein
    assert out.Q.dim == R.dim + S.dim - 2
