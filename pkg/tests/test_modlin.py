"""Prime-field linear algebra against independent small oracles."""

import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charseq import modlin
from charseq.errors import DomainError

P = 10007


def minor_rank(matrix, p):
    """Rank by exhaustive minors: the largest k with a nonzero k x k minor."""
    a = [[x % p for x in row] for row in matrix]
    n, m = len(a), len(a[0])

    def det_rec(rows, cols):
        if len(rows) == 1:
            return a[rows[0]][cols[0]] % p
        total = 0
        for idx, c in enumerate(cols):
            sub = det_rec(rows[1:], cols[:idx] + cols[idx + 1 :])
            term = a[rows[0]][c] * sub
            total += -term if idx % 2 else term
        return total % p

    for k in range(min(n, m), 0, -1):
        for rows in combinations(range(n), k):
            for cols in combinations(range(m), k):
                if det_rec(list(rows), list(cols)) != 0:
                    return k
    return 0


@given(st.integers(min_value=0, max_value=10**6))
def test_rank_of_small_random_matrices(seed):
    rng = random.Random(seed)
    n = rng.randrange(1, 5)
    m = rng.randrange(1, 5)
    p = rng.choice([2, 3, 101, P])
    mat = [[rng.randrange(p) for _ in range(m)] for _ in range(n)]
    assert modlin.rank(mat, p) == minor_rank(mat, p)


def test_rank_with_forced_dependencies():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert modlin.rank(rows, P) == 2
    assert modlin.rank([[P, 2 * P], [3 * P, P]], P) == 0
    assert modlin.rank(np.zeros((0, 3), dtype=np.int64), P) == 0


def test_kernel_is_exact_nullspace():
    rng = random.Random(11)
    for _ in range(40):
        n, m = rng.randrange(1, 5), rng.randrange(1, 6)
        p = rng.choice([3, 101, P])
        mat = np.array([[rng.randrange(p) for _ in range(m)] for _ in range(n)], dtype=np.int64)
        basis = modlin.kernel_basis(mat, p)
        assert basis.shape[0] == m - modlin.rank(mat, p)
        if basis.shape[0]:
            assert not ((mat @ basis.T) % p).any()
            assert modlin.rank(basis, p) == basis.shape[0]


def test_det_matches_cofactor_expansion():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randrange(1, 5)
        p = rng.choice([3, 101, P])
        mat = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]

        def cofactor(a):
            k = len(a)
            if k == 1:
                return a[0][0] % p
            total = 0
            for j in range(k):
                sub = [row[:j] + row[j + 1 :] for row in a[1:]]
                term = a[0][j] * cofactor(sub)
                total += -term if j % 2 else term
            return total % p

        assert modlin.det(np.array(mat, dtype=np.int64), p) == cofactor(mat)
    with pytest.raises(DomainError):
        modlin.det(np.zeros((2, 3), dtype=np.int64), P)


@given(st.lists(st.integers(min_value=0, max_value=P - 1), min_size=1, max_size=7))
@settings(max_examples=100)
def test_interpolation_recovers_polynomials(coeffs):
    nodes = list(range(len(coeffs)))
    values = [modlin.poly_eval(coeffs, x, P) for x in nodes]
    got = modlin.interpolate(nodes, values, P)
    assert got == modlin.poly_trim(list(coeffs))


def test_poly_roots_and_gcd():
    # (x - 3)(x - 5) mod 101
    p = 101
    poly = [15, -8 % p, 1]
    assert modlin.poly_roots(poly, p) == [3, 5]
    other = [(-3) % p, 1]  # x - 3
    g = modlin.poly_gcd(poly, other, p)
    assert g == [(-3) % p, 1]
    assert modlin.poly_gcd(poly, [1], p) == [1]
    with pytest.raises(DomainError):
        modlin.poly_roots([0, 0], p)
