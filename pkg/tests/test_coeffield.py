from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from logres.coeffield import (
    RatFunc,
    arith,
    collect_poles,
    normalize,
    parse_scalar,
    render_pole,
    render_scalar,
    substitute_parameter,
)
from logres.errors import MalformedScalarError, SpecializationError

t = RatFunc.param()


def test_normalize_rational():
    assert normalize(Fraction(6, 4)) == Fraction(3, 2)
    assert normalize(Fraction(0, 5)) == 0
    assert normalize(Fraction(0, 5)).denominator == 1


def test_normalize_ratfunc_content_and_gcd():
    e = RatFunc((2, 0, 2), (2, 2))
    assert normalize(e) == (t * t + 1) / (t + 1)
    assert e.den == (Fraction(1), Fraction(1))


def test_zero_denominator_rejected():
    with pytest.raises(MalformedScalarError):
        RatFunc((1,), ())


def test_arith_examples():
    assert arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)
    assert arith(t, t, "mul") == t ** 2
    assert arith(RatFunc(1), t - 1, "div") == RatFunc((1,), (-1, 1))


def test_arith_errors():
    with pytest.raises(ZeroDivisionError):
        arith(Fraction(1), Fraction(0), "div")
    with pytest.raises(ZeroDivisionError):
        arith(t, RatFunc(0), "div")
    with pytest.raises(TypeError):
        arith(Fraction(1), t, "add")


def test_substitute_parameter():
    assert substitute_parameter((t * t + 1) / (t + 1), 1) == 1
    assert substitute_parameter(27 + t ** 3, 0) == 27
    with pytest.raises(SpecializationError):
        substitute_parameter(1 / (t - 2), 2)


def test_render_and_parse_roundtrip():
    e = (t ** 3 + 27) / (3 * t - 1)
    assert parse_scalar(render_scalar(e)) == e
    assert render_scalar(Fraction(-7, 3)) == "-7/3"
    assert parse_scalar("-7/3") == Fraction(-7, 3)


def test_collect_poles_records_inverted_factors():
    with collect_poles() as poles:
        _ = 1 / (t * t + 1)
        _ = t / 3
    assert {render_pole(p) for p in poles} == {"t^2+1"}


rat = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 12))
upoly = st.lists(rat, min_size=0, max_size=4)


@st.composite
def ratfuncs(draw):
    num = draw(upoly)
    den = draw(upoly)
    if not any(den):
        den = [Fraction(1)]
    return RatFunc(tuple(num), tuple(den))


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if a:
        assert a * (1 / a) == 1


@given(ratfuncs(), rat)
def test_substitution_is_a_homomorphism(a, v):
    try:
        av = a.substitute(v)
        sq = (a * a + 1).substitute(v)
    except SpecializationError:
        return
    assert sq == av * av + 1
