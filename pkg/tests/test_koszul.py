import itertools
import random

import pytest

from fglab import koszul
from fglab.errors import UnsupportedBase
from fglab.selftest import random_complex


def H(A, seq):
    return koszul.all_homology(koszul.build_koszul(A, seq))


def summary(hs):
    return [(h.free_rank, sorted(h.torsion)) for h in hs]


def test_integers_mod_five():
    Z = koszul.make_algebra({"kind": "monomial", "vars": ["x"], "bounds": [1]})
    assert summary(H(Z, [5])) == [(0, [5]), (0, [])]
    assert koszul.is_regular(Z, [5]).regular
    assert summary(H(Z, [0])) == [(1, []), (1, [])]


def test_pi_in_ramified_ring():
    A = koszul.make_algebra({"kind": "monogenic", "poly": [-5, 0, 1], "var": "pi"})
    hs = H(A, ["pi"])
    assert summary(hs) == [(0, [5]), (0, [])]


def test_truncated_polynomial_not_regular():
    C = koszul.make_algebra({"kind": "monomial", "vars": ["x", "y"], "bounds": [3, 3]})
    v = koszul.is_regular(C, ["x", "y"])
    assert not v.regular and v.agree
    assert v.witness_degree is not None


def test_regular_sequence_in_polynomial_quotient():
    # x in Z[x]/(x^2) is a zero divisor
    A = koszul.make_algebra({"kind": "monomial", "vars": ["x"], "bounds": [2]})
    v = koszul.is_regular(A, ["x"])
    assert not v.homological and not v.direct
    assert v.zero_divisor_index == 1


def test_zero_sequence_exterior():
    A = koszul.make_algebra({"kind": "monomial", "vars": ["x"], "bounds": [2]})
    rep = koszul.collapse_check(A, [0, 0, 0])
    assert rep["zero_collapse"]["ok"]
    assert [h["free_rank"] for h in rep["homology"]] == [2, 6, 6, 2]


def test_mod_p_power_base():
    A = koszul.make_algebra({"kind": "monomial", "vars": ["x"], "bounds": [1], "base": "Z/5^3"})
    hs = H(A, [5])
    # 0 -> Z/125 --5--> Z/125 -> 0
    assert hs[0].torsion == [5] and hs[0].free_rank == 0
    assert hs[1].torsion == [5] and hs[1].free_rank == 0
    with pytest.raises(UnsupportedBase):
        koszul.is_regular(A, [5])


@pytest.mark.parametrize("seed", range(15))
def test_permutation_invariance(seed):
    rng = random.Random(seed)
    A, seq = random_complex(rng)
    base = summary(H(A, seq))
    perm = list(seq)
    rng.shuffle(perm)
    assert summary(H(A, perm)) == base


@pytest.mark.parametrize("seed", range(15))
def test_unit_invariance(seed):
    rng = random.Random(50 + seed)
    A, seq = random_complex(rng)
    base = summary(H(A, seq))
    scaled = [A.scale(-1, A.element(a)) for a in seq]
    assert summary(H(A, scaled)) == base


@pytest.mark.parametrize("seed", range(15))
def test_kunneth_with_zero(seed):
    rng = random.Random(100 + seed)
    A, seq = random_complex(rng)
    hs = H(A, seq)
    pred = koszul.kunneth_prediction(hs)
    got = H(A, [A.zero()] + [A.element(a) for a in seq])
    assert summary(got) == pred


@pytest.mark.parametrize("seed", range(15))
def test_adjoining_unit_kills_homology(seed):
    rng = random.Random(150 + seed)
    A, seq = random_complex(rng)
    hs = H(A, [1] + [A.element(a) for a in seq])
    assert all(h.is_zero for h in hs)


@pytest.mark.parametrize("seed", range(10))
def test_euler_characteristic(seed):
    rng = random.Random(200 + seed)
    while True:
        A, seq = random_complex(rng)
        if A.modulus == 0:
            break
    h, c = koszul.euler_characteristic(koszul.build_koszul(A, seq))
    assert h == c


def _d(K, comps):
    k, v = K.element(comps)
    return K.components(k - 1, K.differential(k, v)) if k else {}


def _add(A, x, y):
    out = dict(x)
    for I, a in y.items():
        out[I] = A.add(out[I], a) if I in out else a
    return {I: a for I, a in out.items() if not A.is_zero(a)}


@pytest.mark.parametrize("seed", range(10))
def test_leibniz(seed):
    rng = random.Random(300 + seed)
    A, seq = random_complex(rng)
    K = koszul.build_koszul(A, seq)
    m = K.m
    for _ in range(5):
        p, q = rng.randint(0, m), rng.randint(0, m)
        if p + q > m:
            continue
        x = {I: [rng.randint(-2, 2) for _ in range(A.rank)] for I in rng.sample(K.bases[p], 1)}
        y = {J: [rng.randint(-2, 2) for _ in range(A.rank)] for J in rng.sample(K.bases[q], 1)}
        x = {I: A.reduce(a) for I, a in x.items() if not A.is_zero(A.reduce(a))}
        y = {J: A.reduce(b) for J, b in y.items() if not A.is_zero(A.reduce(b))}
        xy = K.product(x, y)
        if not x or not y or not xy:
            continue
        lhs = _d(K, xy)
        sign = -1 if p % 2 else 1
        rhs = _add(A, K.product(_d(K, x), y) if p else {},
                   {I: A.scale(sign, a) for I, a in K.product(x, _d(K, y)).items()} if q else {})
        assert lhs == rhs


def test_subsets_colex_and_wedge():
    assert koszul.subsets(4, 2) == [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]
    assert koszul.wedge((2,), (1,)) == (-1, (1, 2))
    assert koszul.wedge((1,), (1,))[0] == 0


def test_d_squared_zero():
    rng = random.Random(9)
    for _ in range(10):
        A, seq = random_complex(rng)
        K = koszul.build_koszul(A, seq)
        for k in range(2, K.m + 1):
            D1, D2 = K.matrix(k - 1), K.matrix(k)
            for i, j in itertools.product(range(len(D1)), range(len(D2[0]) if D2 else 0)):
                s = sum(D1[i][l] * D2[l][j] for l in range(len(D2)))
                assert s % A.modulus == 0 if A.modulus else s == 0
