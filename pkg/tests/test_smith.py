import random

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from fglab import smith


def sympy_invariants(A):
    S = smith_normal_form(Matrix(A), domain=ZZ)
    d = [abs(int(S[i, i])) for i in range(min(S.shape))]
    return sorted(x for x in d if x)


@pytest.mark.parametrize("seed", range(60))
def test_smith_matches_sympy(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 6), rng.randint(1, 6)
    A = [[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)]
    assert sorted(smith.smith_diagonal(A)) == sympy_invariants(A)
    assert smith.rank(A) == Matrix(A).rank()


def test_smith_divisibility_chain():
    d = smith.smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert d == [2, 6, 12]
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))


@pytest.mark.parametrize("seed", range(20))
def test_kernel_basis(seed):
    rng = random.Random(100 + seed)
    n, m = rng.randint(1, 4), rng.randint(2, 6)
    A = [[rng.randint(-5, 5) for _ in range(m)] for _ in range(n)]
    K = smith.columns(smith.kernel_basis(A))
    assert len(K) == m - smith.rank(A)
    for v in K:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)


def test_quotient_invariants():
    # Z^2 / <(2, 0), (0, 6)> = Z/2 + Z/6
    free, tors = smith.quotient_invariants([[1, 0], [0, 1]], [[2, 0], [0, 6]], 2)
    assert free == 0 and tors == [2, 6]
