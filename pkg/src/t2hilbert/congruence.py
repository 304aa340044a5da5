"""Smith normal form over the integers and counts of linear congruence solutions."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .weights import WeightMatrix, faithfulness

__all__ = [
    "SmithDecomposition",
    "ZeroMatrix",
    "BadModulus",
    "SingularPair",
    "smith_normal_form",
    "count_congruence_solutions",
    "count_root_pairs",
    "matmul",
    "determinant",
]

Matrix = list[list[int]]


class ZeroMatrix(ValueError):
    pass


class BadModulus(ValueError):
    pass


class SingularPair(ValueError):
    pass


@dataclass(frozen=True)
class SmithDecomposition:
    """``M == P @ diag(S) @ Q`` with unimodular P (m x m) and Q (n x n)."""
    P: tuple[tuple[int, ...], ...]
    S: tuple[int, ...]
    Q: tuple[tuple[int, ...], ...]
    r: int

    def diagonal_matrix(self) -> Matrix:
        m, n = len(self.P), len(self.Q)
        D = [[0] * n for _ in range(m)]
        for i, a in enumerate(self.S):
            D[i][i] = a
        return D

    def reconstruct(self) -> Matrix:
        return matmul(matmul(self.P, self.diagonal_matrix()), self.Q)


def matmul(X: Sequence[Sequence[int]], Y: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*Y))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in X]


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free Bareiss elimination."""
    A = [list(r) for r in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1] if n else 1


def _identity(k: int) -> Matrix:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with smallest-absolute-value pivoting.

    Works on a copy D of M while keeping ``M == P @ D @ Q``: a row operation
    ``D <- E D`` is compensated by ``P <- P E^-1`` and a column operation
    ``D <- D F`` by ``Q <- F^-1 Q``.
    """
    D = [[int(x) for x in row] for row in M]
    m = len(D)
    n = len(D[0]) if m else 0
    if not any(x for row in D for x in row):
        raise ZeroMatrix("Smith normal form of the zero matrix is undefined here")
    P, Q = _identity(m), _identity(n)

    def row_add(dst, src, k):  # row dst += k * row src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        for row in P:  # P <- P * E^-1 : column src -= k * column dst
            row[src] -= k * row[dst]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        for row in P:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        D[i] = [-a for a in D[i]]
        for row in P:
            row[i] = -row[i]

    def col_add(dst, src, k):  # col dst += k * col src
        for row in D:
            row[dst] += k * row[src]
        # Q <- F^-1 Q : row src -= k * row dst
        Q[src] = [a - k * b for a, b in zip(Q[src], Q[dst])]

    def col_swap(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        Q[i], Q[j] = Q[j], Q[i]

    t = 0
    while t < min(m, n):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_add(i, t, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    col_add(j, t, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        dirty = True
            if not dirty:
                # pivot must divide the remaining block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % D[t][t]), None)
                if bad is None:
                    break
                row_add(t, bad[0], 1)
                continue
            entries = [(abs(D[i][t]), i, 'r') for i in range(t, m) if D[i][t]]
            entries += [(abs(D[t][j]), j, 'c') for j in range(t + 1, n) if D[t][j]]
            _, idx, kind = min(entries)
            if kind == 'r':
                row_swap(t, idx)
            else:
                col_swap(t, idx)
        if D[t][t] < 0:
            row_neg(t)
        t += 1

    S = tuple(D[i][i] for i in range(min(m, n)))
    r = sum(1 for a in S if a)
    return SmithDecomposition(tuple(map(tuple, P)), S, tuple(map(tuple, Q)), r)


def count_congruence_solutions(M: Sequence[Sequence[int]], N: int) -> int:
    """Number of x in (Z/N)^n with M x == 0 (mod N)."""
    if N <= 1:
        raise BadModulus(f"modulus must exceed 1, got {N}")
    n = len(M[0])
    snf = smith_normal_form(M)
    count = N ** (n - len(snf.S))
    for a in snf.S:
        count *= gcd(a, N)
    return count


def count_root_pairs(A: WeightMatrix, i: int, j: int) -> int:
    """Pairs of d_ij-th roots of unity (xi, zeta) with xi^d_ik zeta^d_jk = 1 for k != i, j."""
    d = A.minor(i, j)
    if d == 0:
        raise SingularPair(f"d_{i + 1}{j + 1} = 0")
    return faithfulness(A).gcd * abs(d)
