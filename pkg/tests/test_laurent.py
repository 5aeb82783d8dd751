from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from plabic.laurent import LaurentPoly

V = ("x", "y", "z")

terms = st.dictionaries(
    st.tuples(*[st.integers(-3, 3)] * 3), st.integers(-5, 5), max_size=5
)


@given(terms, terms, terms)
def test_ring_axioms(a, b, c):
    A, B, C = (LaurentPoly(V, t) for t in (a, b, c))
    assert A + B == B + A
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert A - A == LaurentPoly.zero(V)


@given(terms, terms)
def test_evaluation_is_a_homomorphism(a, b):
    A, B = LaurentPoly(V, a), LaurentPoly(V, b)
    vals = {"x": Fraction(2), "y": Fraction(3, 5), "z": Fraction(7, 2)}
    assert (A * B).evaluate(vals) == A.evaluate(vals) * B.evaluate(vals)
    assert (A + B).evaluate(vals) == A.evaluate(vals) + B.evaluate(vals)


def test_no_zero_coefficients():
    p = LaurentPoly(V, {(1, 0, 0): 2, (0, 1, 0): 0})
    assert p.terms == {(1, 0, 0): 2}
    assert (p - p).is_zero()


def test_invert_variable():
    x = LaurentPoly.var(V, "x")
    y = LaurentPoly.var(V, "y")
    p = (x * y).invert_variable("x")
    assert p.terms == {(-1, 1, 0): 1}
    assert p.evaluate({"x": 2, "y": 3, "z": 1}) == Fraction(3, 2)


def test_records_and_repr():
    x = LaurentPoly.var(V, "x")
    p = LaurentPoly.one(V) + 2 * x * x + LaurentPoly.var(V, "y", -1)
    assert p.to_records() == [(1, {"y": -1}), (1, {}), (2, {"x": 2})]
    assert repr(p) == "y^-1 + 1 + 2*x^2"


def test_mismatched_variables():
    with pytest.raises(ValueError):
        LaurentPoly(V) + LaurentPoly(("a",))
