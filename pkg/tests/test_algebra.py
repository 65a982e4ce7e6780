import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gorsum import randgen as rg
from gorsum.algebra import (AuditFailure, GradingError, MorphismError, NotConnected, annihilator_basis,
                            augmentation, check_presentation_iso, dual_canonical_module, from_structure,
                            induced_map, morphism_from_images, quotient, quotient_module, regrade,
                            residue_field, restrict_module, trivial_extension)
from gorsum.fields import GF, QQ
from gorsum.poly import PolyRing

from helpers import alg, present

F = GF(101)


def test_complete_intersection_invariants(field):
    A = alg(field, ["x", "y"], ["x^2", "y^2"])
    inv = A.invariants()
    assert (inv.length, inv.hilbert, inv.edim, inv.type, inv.is_gorenstein, inv.a_invariant) == (4, [1, 2, 1], 2, 1, True, 2)
    A.audit()


def test_square_of_maximal_ideal():
    A = alg(QQ, ["x", "y"], ["x^2", "x*y", "y^2"])
    assert A.type == 2 and not A.is_gorenstein and A.socle_basis.shape == (3, 2)


def test_weighted_presentation():
    A = alg(QQ, [("u", 1), ("v", 2)], ["v^2 - u^2*v", "2*u*v - u^3"])
    assert A.hilbert == [1, 1, 2, 1, 1] and A.is_gorenstein


def test_inhomogeneous_relations_give_a_filtered_algebra():
    A = alg(QQ, ["x", "y"], ["x^2 - y^3", "x*y"])
    assert not A.graded and A.hilbert is None
    assert A.loewy_series() == [1, 2, 1, 1]
    with pytest.raises(GradingError):
        present(QQ, ["x", "y"], ["x^2 - y^3", "x*y"], graded=True)


@pytest.mark.parametrize("rels", [["x - 1"], ["x^2 - x"], ["x^2 + 1"]])
def test_non_local_or_zero_quotients_rejected(rels):
    with pytest.raises(NotConnected):
        alg(QQ, ["x"], rels, graded=False)


def test_audit_catches_non_associative_table():
    A = alg(F, ["x"], ["x^3"])
    bad = A.mult.copy()
    bad[1, 2, 2] = bad[2, 1, 2] = 1  # x * x^2 = x^2, while x^2 * x^2 = 0
    with pytest.raises(AuditFailure, match="associative"):
        from_structure(F, bad)


def test_audit_catches_broken_unit():
    A = alg(F, ["x"], ["x^2"])
    bad = A.mult.copy()
    bad[0, 1, 1] = 2
    with pytest.raises(AuditFailure):
        from_structure(F, bad, degrees=A.degrees)


def test_morphisms_from_images():
    A, pres = present(F, ["x", "y"], ["x^2", "y^2"])
    B, presB = present(F, ["t"], ["t^2"])
    phi = morphism_from_images(pres, B, [presB.element("t"), B.zero()])
    assert phi.rank == 2 and phi.is_surjective
    assert phi.kernel_basis().shape[1] == 2


def test_relation_violation_is_reported():
    A, pres = present(F, ["x"], ["x^2"])
    B, presB = present(F, ["t"], ["t^3"])
    with pytest.raises(MorphismError):
        morphism_from_images(pres, B, [presB.element("t")])


def test_quotient_and_induced_map():
    A, pres = present(F, ["x", "y"], ["x^2", "y^2"])
    Q, pi = quotient(A, A.socle_basis)
    assert Q.hilbert == [1, 2] and pi.is_surjective
    k = residue_field(F)
    eps = induced_map(pi, augmentation(A, k))
    assert eps.compose(pi).matrix.tolist() == augmentation(A, k).matrix.tolist()
    with pytest.raises(MorphismError):
        induced_map(augmentation(A, k), pi)


def test_check_presentation_iso_reasons():
    A = alg(QQ, ["x", "y"], ["x^2", "y^2"])
    S = PolyRing(QQ, ["a", "b"])
    x, y = (A.basis_vector(i) for i in (1, 2))
    assert check_presentation_iso(S, ["a^2 + b^2", "a*b"], A, [x + y, x - y])
    bad = check_presentation_iso(S, ["a^2", "b^2"], A, [x + y, x - y])
    assert not bad and "relation" in bad.reason
    small = check_presentation_iso(S, ["a^2", "b^2", "a*b"], A, [x, y])
    assert not small and "relation" in small.reason
    collapse = check_presentation_iso(S, ["a^2", "b^2"], A, [x, x])
    assert not collapse


def test_regrade():
    A = alg(F, ["x"], ["x^3"])
    B = regrade(A, 3)
    assert B.degrees == [0, 3, 6] and B.is_gorenstein
    B.audit()
    with pytest.raises(GradingError):
        regrade(A, 0)


def test_modules_and_trivial_extension():
    A = alg(F, ["x", "y"], ["x^2", "x*y", "y^2"])
    E = dual_canonical_module(A, A.a_invariant + 1)
    E.audit()
    assert E.minimal_generator_count() == A.type
    B = trivial_extension(A, E)
    B.audit()
    assert B.graded and B.dim == 2 * A.dim and B.is_gorenstein
    M = quotient_module(A.regular_module(), A.socle_basis)
    M.audit()
    assert M.dim == 1 and M.is_cyclic()
    k = residue_field(F)
    R = restrict_module(k.regular_module(), augmentation(A, k))
    assert R.socle_basis().shape[1] == 1


def test_annihilator_of_socle_is_maximal_ideal():
    A = alg(F, ["x", "y"], ["x^2", "y^2"])
    assert annihilator_basis(A, A.socle_basis).shape[1] == A.dim - 1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_random_algebras_pass_audit(seed):
    rng = np.random.default_rng(seed)
    A = rg.random_graded_algebra(F, rng)
    A.audit()
    assert sum(A.hilbert) == A.dim
    assert A.loewy_series() == A.hilbert
    G = rg.random_gorenstein(F, rng)
    G.audit()
    assert G.is_gorenstein and G.hilbert == G.hilbert[::-1]
