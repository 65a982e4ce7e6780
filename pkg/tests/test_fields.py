from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gorsum.fields import GF, QQ, FieldError, field_from_name


def test_rationals_are_exact():
    assert QQ("1/3") + QQ("2/3") == 1
    assert QQ.inv(QQ(-4)) == Fraction(-1, 4)
    with pytest.raises(FieldError):
        QQ(0.5)


def test_prime_field_reduces_and_inverts():
    F = GF(7)
    assert F(-1) == 6
    assert F(Fraction(1, 3)) == 5
    assert F.mul(F.inv(3), 3) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(14)


@pytest.mark.parametrize("p", [0, 1, 4, 91, 561])
def test_composite_moduli_rejected(p):
    with pytest.raises(FieldError):
        GF(p)


def test_large_prime_uses_object_storage():
    F = GF(2**61 - 1)
    assert F.dtype is object
    assert F.mul(F(2**60), 2) == 1


def test_field_names_round_trip():
    assert field_from_name("QQ") is QQ
    assert field_from_name(" GF(101) ") is GF(101)
    assert GF(101) == GF(101) and GF(101) != GF(103)
    with pytest.raises(FieldError):
        field_from_name("RR")


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_gf_matches_fraction_reduction(a, b):
    F = GF(101)
    if b % 101 == 0:
        return
    assert F(Fraction(a, b)) == a * pow(b, -1, 101) % 101


def test_random_arrays_are_normalized(rng):
    A = GF(5).random_array(rng, (6, 6))
    assert A.dtype == np.int64 and A.min() >= 0 and A.max() < 5
    assert all(isinstance(x, Fraction) for x in QQ.random_array(rng, (3,)))
