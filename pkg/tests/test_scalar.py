from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ultrainv.scalar import (GaussianRational, as_exact, format_rational,
                             parse_rational)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=3)
scalars = st.builds(GaussianRational.from_fractions, rationals, rationals)


def test_canonical_triple():
    q = GaussianRational(2, 4, 6)
    assert (q.a, q.b, q.d) == (1, 2, 3)
    q = GaussianRational(1, 0, -2)
    assert (q.a, q.b, q.d) == (-1, 0, 2)
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1, 0, 0)


def test_parts_are_lowest_terms():
    q = GaussianRational(2, 3, 2)
    assert q.re == Fraction(1) and q.im == Fraction(3, 2)


def test_basic_arithmetic():
    i = GaussianRational(0, 1)
    assert i * i == as_exact(-1)
    half = GaussianRational(1, 0, 2)
    assert half + half == 1
    assert (i + 1) * (i - 1) == as_exact(-2)
    assert as_exact(Fraction(3, 4)).inverse() == as_exact(Fraction(4, 3))


def test_division_and_conjugate():
    q = GaussianRational(1, 2, 3)
    assert q / q == 1
    assert q * q.conjugate() == as_exact(Fraction(5, 9))
    with pytest.raises(ZeroDivisionError):
        as_exact(0).inverse()


def test_int_equality_and_hash():
    assert GaussianRational(5) == 5
    assert hash(GaussianRational(5)) == hash(5)
    assert GaussianRational(1, 1) != 1


def test_string_round_trip():
    q = GaussianRational(-7, 0, 3)
    assert parse_rational(format_rational(q.re)) == q.re
    assert parse_rational("4") == Fraction(4)


@given(scalars, scalars, scalars)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x * y == y * x


@given(scalars)
def test_inverse_round_trip(x):
    if x:
        assert x * x.inverse() == 1
        assert (x.inverse()).inverse() == x
