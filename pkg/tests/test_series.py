from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fglab.errors import NonzeroConstantTerm, VariableMismatch
from fglab.rings import QQ
from fglab.series import (
    SeriesParseError,
    TruncSeries,
    comp_inverse,
    compose,
    identity,
    parse_series,
    recenter,
    substitute,
    to_text,
)

CAP = 8
coef = st.fractions(min_value=-20, max_value=20, max_denominator=6)


def one_var(coeffs, cap=CAP, const=False):
    start = 0 if const else 1
    return TruncSeries(QQ, ("T",), cap, {(k + start,): c for k, c in enumerate(coeffs)})


@st.composite
def series1(draw, unit_lead=False):
    cs = draw(st.lists(coef, min_size=1, max_size=CAP))
    if unit_lead and cs[0] == 0:
        cs[0] = Fraction(1)
    return one_var(cs)


@settings(max_examples=50, deadline=None)
@given(series1(unit_lead=True))
def test_comp_inverse_both_sides(t):
    u = comp_inverse(t)
    assert compose(t, u).equals(identity(QQ, CAP))
    assert compose(u, t).equals(identity(QQ, CAP))


@settings(max_examples=50, deadline=None)
@given(series1(), series1(), series1())
def test_compose_associative(a, b, c):
    assert compose(compose(a, b), c).equals(compose(a, compose(b, c)))


@settings(max_examples=50, deadline=None)
@given(series1(), series1())
def test_multiplication_commutes(a, b):
    assert (a * b).equals(b * a)


@settings(max_examples=40, deadline=None)
@given(series1(), coef)
def test_recenter_direct(a, w):
    shifted, const = recenter(a, w)
    # a(x) = const + shifted(x - w), checked by substituting x~ = T - w back
    T = TruncSeries.variable(QQ, ("T",), "T", CAP)
    back = compose_poly(shifted, T - TruncSeries.constant(QQ, ("T",), CAP, w))
    assert (back + TruncSeries.constant(QQ, ("T",), CAP, const)).equals(a)


def compose_poly(a, s):
    """Naive polynomial evaluation a(s) for s with constant term (a is a polynomial of degree <= CAP)."""
    out = TruncSeries.zero(QQ, ("T",), CAP)
    power = TruncSeries.constant(QQ, ("T",), CAP, Fraction(1))
    for k in range(1, CAP + 1):
        power = power * s
        c = a.coefficient((k,))
        if c:
            out = out + power.scale(c)
    return out


def test_recenter_includes_constant_shift():
    a = one_var([Fraction(0), Fraction(1)])  # T^2
    shifted, const = recenter(a, Fraction(3))
    assert const == 9
    assert shifted.coefficient((1,)) == 6
    assert shifted.coefficient((2,)) == 1


def test_recenter_needs_zero_constant():
    with pytest.raises(NonzeroConstantTerm):
        recenter(one_var([Fraction(1)], const=True), 1)


def test_substitute_two_vars():
    X = TruncSeries.variable(QQ, ("X", "Y"), "X", 4)
    Y = TruncSeries.variable(QQ, ("X", "Y"), "Y", 4)
    F = X + Y + X * Y
    G = substitute(F, {"X": F, "Y": X})
    # (X+Y+XY) + X + (X+Y+XY) X
    expect = X + Y + X * Y + X + (X + Y + X * Y) * X
    assert G.equals(expect)


def test_variable_mismatch():
    a = TruncSeries.variable(QQ, ("X",), "X", 3)
    b = TruncSeries.variable(QQ, ("Y",), "Y", 3)
    with pytest.raises(VariableMismatch):
        a + b


@settings(max_examples=40, deadline=None)
@given(st.lists(coef, min_size=1, max_size=CAP))
def test_text_roundtrip(cs):
    s = one_var(cs)
    assert parse_series(to_text(s), QQ, ("T",)).equals(s)


def test_text_roundtrip_two_vars():
    X = TruncSeries.variable(QQ, ("X", "Y"), "X", 5)
    Y = TruncSeries.variable(QQ, ("X", "Y"), "Y", 5)
    s = X + Y - (X * Y).scale(Fraction(3, 2)) + (X * X * Y)
    text = to_text(s)
    assert text.endswith("O(deg 6)")
    assert parse_series(text, QQ, ("X", "Y")).equals(s)


def test_parse_error():
    with pytest.raises(SeriesParseError):
        parse_series("X + * Y", QQ, ("X", "Y"))
