import random

from hypothesis import given, settings, strategies as st

from twistk.intlinalg import (det, diagonal, hermite_rows, invariant_factors, is_unimodular,
                              kernel_basis, lattice_coordinates, matmul, matvec, same_lattice,
                              smith_normal_form, smith_with_inverse, identity)


def check_snf(A, ncols=None):
    U, S, V = smith_normal_form(A, ncols)
    m = len(A)
    n = len(A[0]) if A else ncols
    assert matmul(matmul(U, A, m), V, n) == S
    assert is_unimodular(U) and is_unimodular(V)
    for i in range(m):
        for j in range(n):
            if i != j:
                assert S[i][j] == 0
    d = diagonal(S)
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b % a == 0) if a else b == 0
    return d


def test_snf_examples():
    assert check_snf([[2, 0], [0, 3]]) == [1, 6]
    assert check_snf([[0, 0], [0, 0]]) == [0, 0]
    assert check_snf([[1]]) == [1]


def test_snf_empty():
    U, S, V = smith_normal_form([], 3)
    assert S == [] and V == identity(3)


matrices = st.integers(1, 6).flatmap(lambda m: st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_snf_contract(A):
    d = check_snf(A)
    if len(A) == len(A[0]) and det(A) != 0:
        prod = 1
        for x in d:
            prod *= x
        assert prod == abs(det(A))


def test_snf_randomized_large():
    rng = random.Random(5)
    for _ in range(25):
        m, n = rng.randint(1, 12), rng.randint(1, 12)
        check_snf([[rng.randint(-100, 100) for _ in range(n)] for _ in range(m)])


def test_inverse_transform():
    rng = random.Random(9)
    for _ in range(20):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        U, S, V, Vinv = smith_with_inverse(A, n)
        assert matmul(V, Vinv) == identity(n)


def test_det_against_cofactor():
    def cofactor(M):
        if len(M) == 1:
            return M[0][0]
        return sum((-1) ** j * M[0][j] * cofactor([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(len(M)))
    rng = random.Random(2)
    for n in range(1, 6):
        M = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert det(M) == cofactor(M)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_basis(A):
    n = len(A[0])
    K = kernel_basis(A, n)
    for x in K:
        assert matvec(A, x) == [0] * len(A)
    rank = len([d for d in invariant_factors(A)])
    assert len(K) == n - rank
    # saturated: the kernel lattice is a direct summand
    if K:
        assert [x for x in invariant_factors(K)] == [1] * len(K)


def test_hermite_shape():
    H = hermite_rows([[4, 6, 2], [2, 3, 1], [0, 5, 5]], 3)
    pivots = [next(j for j, a in enumerate(r) if a) for r in H]
    assert pivots == sorted(set(pivots))
    for k, r in enumerate(H):
        p = r[pivots[k]]
        assert p > 0
        for above in H[:k]:
            assert 0 <= above[pivots[k]] < p


@settings(max_examples=60, deadline=None)
@given(matrices, st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_lattice_membership(A, coeffs):
    n = len(A[0])
    H = hermite_rows(A, n)
    assert same_lattice(H, A, n)
    x = [sum(c * row[j] for c, row in zip(coeffs, A)) for j in range(n)]
    y = lattice_coordinates(H, x)
    assert y is not None
    assert [sum(c * row[j] for c, row in zip(y, H)) for j in range(n)] == x


def test_lattice_non_member():
    H = hermite_rows([[2, 0], [0, 3]], 2)
    assert lattice_coordinates(H, [1, 0]) is None
    assert lattice_coordinates(H, [4, 9]) == [2, 3]
