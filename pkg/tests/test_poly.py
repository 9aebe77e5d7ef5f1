from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from freefield.poly import MU, ONE, Poly, RatFunc, falling_factorial, parse_rational, poly_gcd

polys = st.lists(st.fractions(max_denominator=5).map(lambda f: f.limit_denominator(5)), max_size=4).map(Poly)


def test_normal_form_drops_zeros():
    assert Poly([1, 0, 0]).c == (1,)
    assert Poly([0, 0]) == Poly()
    assert not Poly([Fraction(0)])
    assert Poly([Fraction(4, 2)]).c == (2,)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly()


@given(polys, polys, st.fractions(max_denominator=7))
def test_evaluate_is_a_homomorphism(a, b, t):
    assert (a * b).evaluate(t) == a.evaluate(t) * b.evaluate(t)
    assert (a + b).evaluate(t) == a.evaluate(t) + b.evaluate(t)


@given(polys, polys)
def test_divmod(a, b):
    if not b:
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_gcd_and_falling_factorial():
    f = falling_factorial(3)
    assert f == MU * (MU - 1) * (MU - 2)
    assert poly_gcd(f, MU * MU - MU) == MU * MU - MU
    assert falling_factorial(3).evaluate(2) == 0


def test_printing():
    assert str(MU * MU - 1) == "mu^2 - 1"
    assert (2 * (MU - 1)).factored_str() == "2*(mu - 1)"
    assert (MU * Fraction(1, 2)).factored_str() == "1/2*(mu)"
    assert Poly.const(-3).factored_str() == "-3"


def test_ratfunc_field():
    x = RatFunc(MU - 1, MU * MU - 1)
    assert x == RatFunc(ONE, MU + 1)
    assert x * RatFunc(MU + 1) == RatFunc(1)
    assert x / x == RatFunc(1)
    assert not (x - x)


@pytest.mark.parametrize("text,val", [("3/2", Fraction(3, 2)), ("-4", Fraction(-4)), ("−1/3", Fraction(-1, 3))])
def test_parse_rational(text, val):
    assert parse_rational(text) == val


@pytest.mark.parametrize("text", ["0.5", "1e3", "abc", "1/0"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)
