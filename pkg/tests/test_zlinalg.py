import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricgkm.zlinalg import (
    FiniteAbelianGroup,
    ZeroVector,
    determinant,
    hermite_rows,
    identity,
    kernel_basis,
    lattice_basis_completion,
    matmul,
    normalize_sign,
    primitive_part,
    quotient_invariants,
    rank,
    saturate,
    smith_normal_form,
    vecmat,
)


def leibniz_det(A):
    """Permutation-expansion determinant; independent of the Bareiss code."""
    n = len(A)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= A[i][p[i]]
        total += term
    return total


def rand_matrix(rng, rows, cols, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_determinant_matches_permutation_expansion():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 5)
        A = rand_matrix(rng, n, n)
        assert determinant(A) == leibniz_det(A)


def test_determinant_of_empty_matrix_is_one():
    assert determinant([]) == 1


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_identities(A):
    r, c = len(A), len(A[0])
    S = smith_normal_form(A)
    assert matmul(matmul(S.U, A), S.V) == S.D
    assert matmul(S.U, S.U_inv) == identity(r)
    assert matmul(S.V, S.V_inv) == identity(c)
    assert abs(determinant(S.U)) == 1 and abs(determinant(S.V)) == 1
    d = S.diagonal
    for i in range(len(d) - 1):
        if d[i + 1]:
            assert d[i] != 0 and d[i + 1] % d[i] == 0
    for i in range(r):
        for j in range(c):
            if i != j:
                assert S.D[i][j] == 0
    assert all(x >= 0 for x in d)


def test_smith_small_cases():
    assert smith_normal_form([[2, 0], [0, 3]]).diagonal == [1, 6]
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0
    assert smith_normal_form([[4, 6]]).diagonal == [2]


def test_invariants_unchanged_by_unimodular_change():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(1, 4)
        A = rand_matrix(rng, n, n)
        W = identity(n)
        for _ in range(6):
            i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
            if i != j:
                k = rng.randint(-3, 3)
                W[i] = [a + k * b for a, b in zip(W[i], W[j])]
        assert abs(determinant(W)) == 1
        assert smith_normal_form(matmul(W, A)).diagonal == smith_normal_form(A).diagonal
        assert smith_normal_form(matmul(A, W)).diagonal == smith_normal_form(A).diagonal


def test_product_of_factors_is_abs_det():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 5)
        A = rand_matrix(rng, n, n)
        d = smith_normal_form(A).diagonal
        prod = 1
        for x in d:
            prod *= x
        assert prod == abs(leibniz_det(A))


def test_kernel_basis():
    assert kernel_basis([[-1], [-1]], 1) == [[1, -1]]
    rng = random.Random(5)
    for _ in range(100):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        A = rand_matrix(rng, r, c, -4, 4)
        K = kernel_basis(A, c)
        assert len(K) == r - rank(A, c)
        for x in K:
            assert vecmat(x, A) == [0] * c
        # saturated: the quotient by the kernel lattice inside Z^r is torsion-free
        if K:
            G, free = quotient_invariants(r, K)
            assert G.is_trivial and free == r - len(K)


def test_hermite_rows_normal_form():
    # (1, 7) = 2*(2, 4) - (3, 1); the determinant is -10
    assert hermite_rows([[2, 4], [3, 1]], 2) == [[1, 7], [0, 10]]
    rng = random.Random(2)
    for _ in range(100):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        A = rand_matrix(rng, r, c, -5, 5)
        H = hermite_rows(A, c)
        assert len(H) == rank(A, c)
        pivots = [next(i for i, a in enumerate(row) if a) for row in H]
        assert pivots == sorted(set(pivots))
        for k, (row, p) in enumerate(zip(H, pivots)):
            assert row[p] > 0
            for above in H[:k]:
                assert 0 <= above[p] < row[p]
        # same row lattice: each generating set reduces to the other's HNF
        assert hermite_rows(H + A, c) == H


def test_saturate_and_quotients():
    assert saturate([[2, 0], [0, 3]], 2) == identity(2)
    G, free = quotient_invariants(2, [[1, 0], [-1, -2]])
    assert G.invariant_factors == (2,) and free == 0
    G, free = quotient_invariants(3, [[2, 0, 0]])
    assert G.invariant_factors == (2,) and free == 2
    G, free = quotient_invariants(2, [])
    assert G.is_trivial and free == 2


def test_lattice_basis_completion():
    rng = random.Random(9)
    for _ in range(60):
        n = rng.randint(1, 4)
        k = rng.randint(0, n)
        L = rand_matrix(rng, k, n, -5, 5)
        B, B_inv, r = lattice_basis_completion(L, n)
        assert matmul(B, B_inv) == identity(n)
        assert r == rank(L, n)
        for v in L:
            coords = vecmat(v, B_inv)
            assert coords[r:] == [0] * (n - r)


def test_vector_helpers():
    assert primitive_part([4, -6]) == [2, -3]
    assert normalize_sign([0, -1, 2]) == [0, 1, -2]
    with pytest.raises(ZeroVector):
        primitive_part([0, 0])


def test_finite_abelian_group():
    G = FiniteAbelianGroup.from_diagonal([1, 2, 6, 0])
    assert G.invariant_factors == (2, 6) and G.order == 12
    assert str(FiniteAbelianGroup.from_diagonal([1])) == "1"
    with pytest.raises(ValueError):
        FiniteAbelianGroup((2, 3))
