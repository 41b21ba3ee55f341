from fractions import Fraction

import pytest

from fglab import fgl
from fglab.errors import NotPTypical
from fglab.local import make_local_field, make_unramified, qp
from fglab.rings import QQ
from fglab.series import TruncSeries, compose, substitute

D = 10


@pytest.fixture(scope="module")
def fields():
    return {"Q_5": qp(5, 30), "ram2": make_local_field(make_unramified(5, 1, 30), [(-5,), (0,)], 30)}


@pytest.mark.parametrize("name", ["Q_5", "ram2"])
def test_lubin_tate_constructions_agree_up_to_iso(fields, name):
    L = fields[name]
    F_log = fgl.lubin_tate_law(L, D)
    F_frob = fgl.lubin_tate_from_frobenius(L, D)
    assert fgl.verify_axioms(F_log).ok
    assert fgl.verify_axioms(F_frob).ok
    res = fgl.find_isomorphism(F_frob, F_log, D)
    assert res.found
    assert fgl.conjugate(F_frob, res.series).series.equals(F_log.series.truncate(res.series.cap))


def test_frobenius_law_has_pi_series(fields):
    L = fields["Q_5"]
    F = fgl.lubin_tate_from_frobenius(L, D)
    f = F.extra["pi_series"]
    # [pi](T) = pi T + T^q up to degree D
    assert f.coefficient((L.q,)) is not None
    T = TruncSeries.variable(L, ("T",), "T", D)
    lhs = compose(f, substitute(F.series, {"X": T, "Y": T}))
    rhs = substitute(F.series, {"X": f, "Y": f})
    assert lhs.equals(rhs)


def test_endo_ring_homomorphism(fields):
    L = fields["Q_5"]
    F = fgl.lubin_tate_law(L, D)
    a, b = L(2), L(3)
    sa, sb = fgl.endo(F, a), fgl.endo(F, b)
    assert compose(sa, sb).equals(fgl.endo(F, a * b))
    assert fgl.formal_sum(F, sa, sb).equals(fgl.endo(F, a + b))


@pytest.mark.parametrize("name,height", [("Q_5", 1), ("ram2", 2)])
def test_height(fields, name, height):
    F = fgl.lubin_tate_law(fields[name], 26)
    assert fgl.height_mod_pi(F) == height


def test_multiplicative_vs_additive():
    M = fgl.multiplicative_law(QQ, 8)
    A = fgl.additive_law(QQ, 8)
    res = fgl.find_isomorphism(M, A, 8)
    assert res.found
    # M^t = A for t = exp(T) - 1
    fact = 1
    for k in range(1, 9):
        fact *= k
        assert res.series.coefficient((k,)) == Fraction(1, fact)


def test_honda_height_one_coefficient():
    log = fgl.honda_log(5, 1, 26)
    F = fgl.from_log(log, 26, integral=True, p=5)
    data = fgl.araki_from_ptypical(F)
    assert data.vlist[0] == -624


def test_araki_roundtrip():
    F = fgl.ptypical_from_araki(3, [Fraction(1), Fraction(2)], 12)
    data = fgl.araki_from_ptypical(F)
    assert data.vlist[:2] == [1, 2]


def test_non_ptypical_rejected():
    # log(1 + T) has a T^2 term, so this law is not 5-typical
    logT = TruncSeries(QQ, ("T",), 10, {(k,): Fraction((-1) ** (k + 1), k) for k in range(1, 11)})
    M = fgl.from_log(fgl.Logarithm(logT), 10, p=5)
    with pytest.raises(NotPTypical):
        fgl.araki_from_ptypical(M)


def test_bad_law_detected():
    X = TruncSeries.variable(QQ, ("X", "Y"), "X", 4)
    Y = TruncSeries.variable(QQ, ("X", "Y"), "Y", 4)
    rep = fgl.verify_axioms(X + Y + X * X * Y)
    assert not rep.ok
    assert "commutativity" in rep.failing()
