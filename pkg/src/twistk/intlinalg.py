"""Integer matrix algorithms on plain nested lists of Python ints.

Matrices are lists of rows. Everything is exact; Python ints never overflow.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], inner: int | None = None) -> Matrix:
    """``A @ B``; ``inner`` gives the shared dimension when A has no rows."""
    if inner is None:
        inner = len(A[0]) if A else len(B)
    cols = len(B[0]) if B else 0
    if inner == 0:
        return zeros(len(A), cols)
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col) if a) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x) if a) for row in A]


def transpose(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(r) for r in zip(*A)]


def is_zero(A: Sequence[Sequence[int]]) -> bool:
    return all(not x for row in A for x in row)


def det(A: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None,
                      transforms: bool = True):
    """Return ``(U, S, V)`` with ``S = U A V`` diagonal, ``d_1 | d_2 | ...``, ``d_i >= 0``.

    Pivoting picks the nonzero entry of least absolute value in the active
    block. ``ncols`` is needed only for a matrix with no rows. With
    ``transforms=False``, U and V are returned as None.
    """
    U, S, V, _ = _snf(A, ncols, transforms, False)
    return U, S, V


def smith_with_inverse(A: Sequence[Sequence[int]], ncols: int | None = None):
    """Like :func:`smith_normal_form` but also returns ``V^-1``."""
    return _snf(A, ncols, True, True)


def _snf(A, ncols, transforms, track_inverse):
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    S = [list(r) for r in A]
    U = identity(m) if transforms else None
    V = identity(n) if transforms else None
    Vinv = identity(n) if track_inverse else None

    def swap_rows(i, j):
        if i != j:
            S[i], S[j] = S[j], S[i]
            if transforms:
                U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in S:
                row[i], row[j] = row[j], row[i]
            if transforms:
                for row in V:
                    row[i], row[j] = row[j], row[i]
            if track_inverse:
                Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        rs, rd = S[src], S[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        if transforms:
            us, ud = U[src], U[dst]
            for k in range(m):
                if us[k]:
                    ud[k] += q * us[k]

    def add_col(dst, src, q):
        for row in S:
            if row[src]:
                row[dst] += q * row[src]
        if transforms:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
        if track_inverse:
            rd, rs = Vinv[dst], Vinv[src]
            for k in range(n):
                if rd[k]:
                    rs[k] -= q * rd[k]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = S[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                break
            swap_rows(t, best[1])
            swap_cols(t, best[2])
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    if S[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    if S[t][j]:
                        clean = False
            if not clean:
                continue
            # divisibility: pull any offending row into row t and repeat
            bad = next((i for i in range(t + 1, m)
                        if any(S[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            if transforms:
                U[t] = [-x for x in U[t]]
    return U, S, V, Vinv


def diagonal(S: Sequence[Sequence[int]]) -> list[int]:
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def invariant_factors(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    _, S, _ = smith_normal_form(A, ncols, transforms=False)
    return [d for d in diagonal(S) if d]


def rank(A: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    return len(hermite_rows([list(r) for r in A], len(A[0]) if A else (ncols or 0)))


def kernel_basis(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Z-basis (as row vectors) of ``{x : A x = 0}``; the kernel is saturated."""
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return identity(n)
    _, S, V = smith_normal_form(A, n)
    r = sum(1 for d in diagonal(S) if d)
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def hermite_rows(rows: list[list[int]], n: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns a basis in echelon form: strictly increasing pivot columns,
    positive pivots, and entries above each pivot reduced into ``[0, pivot)``.
    """
    M = [list(r) for r in rows if any(r)]
    basis: Matrix = []
    col = 0
    while M and col < n:
        live = [r for r in M if r[col]]
        rest = [r for r in M if not r[col]]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            p = live[0]
            nxt = [p]
            for r in live[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        M = rest
        col += 1
    # reduce above pivots
    pivots = [next(j for j, a in enumerate(r) if a) for r in basis]
    for k in range(len(basis)):
        pc = pivots[k]
        p = basis[k][pc]
        for i in range(k):
            q = basis[i][pc] // p
            if q:
                basis[i] = [a - q * b for a, b in zip(basis[i], basis[k])]
    return basis


def lattice_coordinates(basis: Sequence[Sequence[int]], x: Sequence[int]) -> list[int] | None:
    """Integer coefficients of ``x`` in an HNF basis, or None if ``x`` is not in the lattice."""
    x = list(x)
    coeffs = []
    for b in basis:
        pc = next(j for j, a in enumerate(b) if a)
        if x[pc] % b[pc]:
            return None
        q = x[pc] // b[pc]
        coeffs.append(q)
        if q:
            x = [a - q * c for a, c in zip(x, b)]
    if any(x):
        return None
    return coeffs


def same_lattice(rows_a: Sequence[Sequence[int]], rows_b: Sequence[Sequence[int]], n: int) -> bool:
    return hermite_rows([list(r) for r in rows_a], n) == hermite_rows([list(r) for r in rows_b], n)


def is_unimodular(U: Sequence[Sequence[int]]) -> bool:
    return abs(det(U)) == 1
