import pytest
from hypothesis import given, settings, strategies as st

from gorsum.fields import GF, QQ
from gorsum.poly import (NotArtinian, PolyRing, format_poly, groebner_basis, groebner_basis_in, ideal_contains,
                         ideal_equal, is_groebner, normal_form, quotient_monomial_basis)


@pytest.fixture
def R():
    return PolyRing(QQ, ["x", "y", "z"])


def test_parse_and_print(R):
    f = R.parse("x^2 - 3*y*z + 1/2")
    assert format_poly(f) == "x^2 - 3*y*z + 1/2"
    assert R.parse("(x+y)^2") == R.parse("x^2 + 2*x*y + y^2")


def test_parse_rejects_unknown_variable(R):
    with pytest.raises(Exception):
        R.parse("x*w")


def test_grevlex_with_weights():
    S = PolyRing(QQ, [("u", 1), ("v", 2)])
    f = S.parse("u^3 + u*v")
    assert f.is_homogeneous() and f.degree() == 3
    # ties in weighted degree: smaller exponent in the last variable wins
    assert f.leading_monomial() == (3, 0)


def test_reduced_basis_of_twisted_cubic(R):
    gens = [R.parse(s) for s in ("x*z - y^2", "y*z - x^3", "z^2 - x^2*y")]
    G = groebner_basis(gens)
    assert is_groebner(G)
    assert all(g.leading_term()[1] == 1 for g in G)
    assert all(ideal_contains(G, g) for g in gens)
    assert not ideal_contains(G, R.parse("x"))


def test_quotient_basis_of_complete_intersection(R):
    G = groebner_basis([R.parse(s) for s in ("x^2", "y^2", "z^2")])
    assert len(quotient_monomial_basis(G)) == 8


def test_not_artinian(R):
    with pytest.raises(NotArtinian):
        quotient_monomial_basis(groebner_basis([R.parse("x^2"), R.parse("y^3")]))


def test_unit_ideal_and_empty_ideal(R):
    assert quotient_monomial_basis(groebner_basis([R.parse("x + 1"), R.parse("x")])) == []
    assert len(groebner_basis_in(R, [R.zero])) == 0
    assert ideal_equal([R.parse("x*y")], [R.parse("2*x*y")])


def test_finite_field_basis():
    S = PolyRing(GF(5), ["a", "b"])
    G = groebner_basis([S.parse("a^2 - 2*b^2"), S.parse("a*b")])
    assert len(quotient_monomial_basis(G)) == 4
    assert normal_form(S.parse("a^2"), G) == S.parse("2*b^2")


_poly_text = st.lists(
    st.tuples(st.integers(-3, 3), st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=4
).map(lambda ts: " + ".join(f"({c})*x^{a}*y^{b}" for c, a, b in ts))


@settings(max_examples=40, deadline=None)
@given(st.lists(_poly_text, min_size=1, max_size=3))
def test_groebner_basis_generates_the_same_ideal(texts):
    S = PolyRing(GF(7), ["x", "y"])
    gens = [S.parse(t) for t in texts]
    G = groebner_basis_in(S, gens)
    assert is_groebner(G)
    assert all(ideal_contains(G, g) for g in gens if not g.is_zero())
    if len(G):
        assert ideal_equal(list(G.polys), gens)
