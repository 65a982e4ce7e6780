import pytest
from hypothesis import given, strategies as st

from gorsum.series import (MissingRole, NonInvertibleLeadingTerm, RationalSeries, SeriesError, TruncatedSeries,
                           deviations_from_poincare, evaluate_formula, first_difference, reversed_polynomial,
                           termwise_leq)

coeff_lists = st.lists(st.integers(-20, 20), min_size=1, max_size=9)
unit_lists = st.tuples(st.sampled_from([1, -1]), st.lists(st.integers(-5, 5), max_size=8)).map(lambda t: [t[0]] + t[1])


def test_geometric_series():
    assert RationalSeries([1], [1, -1]).expand(5) == [1, 1, 1, 1, 1, 1]
    assert RationalSeries([1], [1, -2, 1]).expand(8) == list(range(1, 10))


def test_reciprocal_needs_unit_leading_term():
    with pytest.raises(NonInvertibleLeadingTerm):
        TruncatedSeries([2, 1]).reciprocal()


@given(unit_lists)
def test_reciprocal_is_inverse(c):
    s = TruncatedSeries(c)
    assert s * s.reciprocal() == TruncatedSeries.one(s.order)


@given(coeff_lists, coeff_lists)
def test_multiplication_commutes_and_truncates(a, b):
    x, y = TruncatedSeries(a), TruncatedSeries(b)
    assert x * y == y * x
    assert (x * y).order == min(x.order, y.order)


def test_reversed_polynomial():
    assert reversed_polynomial(TruncatedSeries([1, 2, 0]), 3, 4) == [0, 0, 2, 1, 0]
    with pytest.raises(SeriesError):
        reversed_polynomial(TruncatedSeries([1, 1, 1]), 1, 4)


def test_hilbert_formulas():
    h = [1, 1, 1]
    assert evaluate_formula("HILB_PROD", {"H_R": h, "H_S": h, "H_T": [1]}) == [1, 2, 2]
    assert evaluate_formula("HILB_SUM", {"H_R": h, "H_S": h, "H_T": [1, 0, 0], "H_V": [0, 0, 1]}) == [1, 2, 1]
    assert evaluate_formula("HILB_SUM_GOR", {"H_R": h, "H_S": h, "H_T": [1, 0, 0], "a": 2}) == [1, 2, 1]


def test_amalgam_and_special_golod():
    one_over = RationalSeries([1], [1, -1])
    assert evaluate_formula("AMALGAM", {"H_A": [1, 0, 0, 0], "H_B": one_over, "H_C": one_over}, 3) == [1, 2, 4, 8]
    assert evaluate_formula("SPECIAL_GOLOD", {"P_P_k": one_over, "r": 0}, 4) == [1, 1, 1, 1, 1]


def test_connected_sum_series_for_cubes():
    # R' = k[x]/(x^2) has P = 1/(1-z); the sum of two cubes is a complete intersection
    P = RationalSeries([1], [1, -1]).expand(8)
    expected = RationalSeries([1], [1, -2, 1]).expand(8)
    assert evaluate_formula("SERIES_Q", {"P_Rq_k": P, "P_Sq_k": P, "r": 1}) == expected
    assert evaluate_formula("CONNSUM_POINCARE", {"P_Rq_N": P, "P_Rq_k": P, "P_Sq_k": P, "r": 1}) == expected


def test_missing_role_and_unknown_formula():
    with pytest.raises(MissingRole):
        evaluate_formula("DRESS_KRAMER", {"P_R_k": [1, 1]})
    with pytest.raises(SeriesError):
        evaluate_formula("NOPE", {})
    with pytest.raises(SeriesError):
        evaluate_formula("HILB_PROD", {"H_R": TruncatedSeries([1, 1]), "H_S": [1, 1], "H_T": [1]}, order=4)


def test_termwise_comparison():
    a, b = TruncatedSeries([1, 2, 3]), TruncatedSeries([1, 2, 4])
    assert termwise_leq(a, b) and not termwise_leq(b, a)
    assert first_difference(a, b) == 2 and first_difference(a, a) is None
    with pytest.raises(SeriesError):
        termwise_leq(a, TruncatedSeries([1]))


def test_deviations_of_complete_intersection_and_golod_ring():
    ci = RationalSeries([1, 2, 1], [1, 0, -1]).expand(6)  # two variables, one relation
    assert deviations_from_poincare(ci) == [2, 1, 0, 0, 0, 0]
    square = RationalSeries([1], [1, -2]).expand(6)  # k[x,y]/(x,y)^2
    assert deviations_from_poincare(square)[:3] == [2, 3, 2]
