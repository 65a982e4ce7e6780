import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gorsum import randgen as rg
from gorsum.algebra import augmentation, residue_field
from gorsum.colength import (CharTwo, ColengthError, Cover, WitnessInvalid, colength_gap_witnesses, extend_cover,
                             gcl_bounds, gorenstein_quotient_lengths, hv_epi_search, identity_cover,
                             principal_cover, teter_test, trivial_extension_cover, verify_cover)
from gorsum.fields import GF, QQ
from gorsum.sums import fiber_product

from helpers import alg

F = GF(101)


def _fiber_over_k(A, B):
    k = residue_field(A.field)
    return fiber_product(augmentation(A, k), augmentation(B, k))


def test_square_of_the_maximal_ideal():
    Q = alg(F, ["x", "y"], ["x^2", "x*y", "y^2"])
    rep = gcl_bounds(Q)
    assert (rep.lower, rep.upper) == (1, 1)
    verify_cover(rep.witness.map, Q)
    assert rep.witness.source.hilbert == [1, 2, 1]
    assert rep.teter is not None and hv_epi_search(Q).found


def test_gorenstein_algebras_have_colength_zero():
    Q = alg(QQ, ["x", "y"], ["x^2", "y^2"])
    rep = gcl_bounds(Q)
    assert (rep.lower, rep.upper) == (0, 0)


def test_fiber_product_of_edim_one_factors():
    fp = _fiber_over_k(alg(F, ["x"], ["x^2"]), alg(F, ["y"], ["y^2"]))
    rep = gcl_bounds(fp.P, fiber=fp)
    assert (rep.lower, rep.upper) == (1, 1)


def test_fiber_product_of_gorenstein_factors_lower_bound():
    fp = _fiber_over_k(alg(F, ["x", "y"], ["x^2", "y^2"]), alg(F, ["z"], ["z^3"]))
    rep = gcl_bounds(fp.P, fiber=fp)
    assert rep.lower == 2 and rep.lower <= rep.upper
    verify_cover(rep.witness.map, fp.P)


def test_no_epimorphism_for_a_non_teter_ring():
    fp = _fiber_over_k(alg(F, ["x", "y"], ["x^2", "y^2"]), alg(F, ["z"], ["z^2"]))
    Q = fp.P
    rep = gcl_bounds(Q, fiber=fp)
    assert rep.lower >= 2 and rep.teter is None
    assert not hv_epi_search(Q).found


def test_trivial_extension_gap_is_the_length():
    Q = alg(F, ["x", "y"], ["x^3", "x*y", "y^2"])
    cov = trivial_extension_cover(Q)
    verify_cover(cov.map, Q)
    assert cov.gap == Q.dim and cov.source.is_gorenstein


def test_gorenstein_quotients_bound_the_colength():
    Q = alg(F, ["x", "y", "z"], ["x^2", "y^2", "z^2", "x*z", "y*z"])
    lq = gorenstein_quotient_lengths(Q)
    assert lq == 4  # k[x,y]/(x^2,y^2) is the largest Gorenstein quotient
    rep = gcl_bounds(Q)
    assert rep.lower == Q.edim - (Q.dim - lq) == 2


def test_witnesses_are_checked():
    Q = alg(F, ["x", "y"], ["x^2", "x*y", "y^2"])
    with pytest.raises(WitnessInvalid):
        verify_cover(identity_cover(Q).map, Q)
    with pytest.raises(ColengthError):
        gcl_bounds(Q, covers=[Cover(identity_cover(Q).map, "bogus")])


def test_characteristic_two():
    Q = alg(GF(2), ["x", "y"], ["x^2", "x*y", "y^2"])
    with pytest.raises(CharTwo):
        teter_test(Q)
    rep = gcl_bounds(Q)
    assert rep.lower == 1 and "skipped" in rep.notes[0]


def test_principal_and_extended_covers():
    Q = alg(F, ["x"], ["x^3"])
    cov = principal_cover(Q, 2)
    verify_cover(cov.map, Q)
    assert cov.gap == 2
    R = alg(F, ["x", "y"], ["x^2", "x*y", "y^2"])
    base = gcl_bounds(R).witness
    for n in (1, 2):
        ext = extend_cover(base, n)
        verify_cover(ext.map, R)
        assert ext.gap == base.gap + n


def test_gap_witnesses():
    Q = alg(F, ["x", "y"], ["x^2", "x*y", "y^2"])
    ws = colength_gap_witnesses(Q, range(4))
    assert {n: c.gap for n, c in ws.items()} == {0: 1, 1: 2, 2: 3, 3: 4}


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32))
def test_epimorphism_implies_teter_witness(seed):
    rng = np.random.default_rng(seed)
    Q = rg.random_graded_algebra(F, rng, max_length=8)
    te = teter_test(Q)
    if hv_epi_search(Q).found:
        assert te is not None
    if te is not None and not Q.is_gorenstein:
        verify_cover(te.cover.map, Q)
        assert te.cover.gap == 1
    rep = gcl_bounds(Q)
    assert rep.lower <= rep.upper
