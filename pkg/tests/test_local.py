import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fglab import local
from fglab.errors import NotEisenstein, NonPrime
from fglab.local import LocalNum, make_local_field, make_unramified, qp, teichmuller, frobenius


@pytest.fixture(scope="module")
def ram2():
    return make_local_field(make_unramified(5, 1, 40), [(-5,), (0,)], 40)


@pytest.fixture(scope="module")
def q25():
    return make_local_field(make_unramified(5, 2, 20), [(-5, 0)], 20)


def test_qp_valuations():
    L = qp(5, 20)
    assert L(25).ord() == 2
    assert L(Fraction(1, 5)).ord() == -1
    assert L(7).ord() == 0


def test_ramified_pi_order(ram2):
    pi = ram2.uniformizer(1)
    assert pi.ord() == Fraction(1, 2)
    assert (pi * pi).ord() == 1
    # pi^2 = 5
    assert (pi * pi - ram2(5)).is_zero()


def test_inverse(ram2):
    rng = random.Random(3)
    for _ in range(30):
        u = ram2.random_unit(rng)
        assert (u * u.inverse() - ram2(1)).is_zero()


def test_json_roundtrip(ram2):
    rng = random.Random(4)
    for _ in range(10):
        x = ram2.random_element(rng)
        y = LocalNum.from_json(ram2, x.to_json())
        assert (x - y).is_zero()


def test_teichmuller_fixed_by_power(q25):
    R = q25.base
    for r in R.residue_field.elements():
        w = teichmuller(R, r)
        assert R.equal(R.pow(w, R.q), w)


def test_frobenius_order_f(q25):
    R = q25.base
    rng = random.Random(5)
    for _ in range(5):
        x = R.random_element(rng)
        assert R.equal(frobenius(R, x, 2), x)
    for r in R.residue_field.elements():
        w = teichmuller(R, r)
        assert R.equal(frobenius(R, w), R.pow(w, R.p))


def test_not_eisenstein():
    with pytest.raises(NotEisenstein):
        make_local_field(make_unramified(5, 1, 10), [(-25,), (0,)], 10)


def test_nonprime():
    with pytest.raises(NonPrime):
        make_unramified(6, 1, 10)


@settings(max_examples=60, deadline=None)
@given(st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6))
def test_ring_ops_match_integers(a, b):
    L = qp(5, 30)
    assert (L(a) + L(b) - L(a + b)).is_zero()
    assert (L(a) * L(b) - L(a * b)).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10 ** 6))
def test_valuation_multiplicative(a):
    L = qp(5, 30)
    v = 0
    n = a
    while n % 5 == 0:
        n //= 5
        v += 1
    assert L(a).ord() == v
