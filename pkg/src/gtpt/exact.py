"""Exact integer and rational matrix helpers (lists of Python ints/Fractions)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Mat = Sequence[Sequence]


def matmul(A: Mat, B: Mat) -> list[list]:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def transpose(A: Mat) -> list[list]:
    return [list(r) for r in zip(*A)]


def identity(m: int) -> list[list[int]]:
    return [[int(i == j) for j in range(m)] for i in range(m)]


def kron(A: Mat, B: Mat) -> list[list]:
    p, q = len(B), len(B[0]) if B else 0
    return [
        [A[i // p][j // q] * B[i % p][j % q] for j in range(len(A[0]) * q)]
        for i in range(len(A) * p)
    ]


def det(A: Mat):
    """Exact determinant.  Integer input uses Bareiss elimination."""
    M = [list(r) for r in A]
    n = len(M)
    if n == 0:
        return 1
    if any(isinstance(x, Fraction) for r in M for x in r):
        den = lcm(*(Fraction(x).denominator for r in M for x in r))
        M = [[int(Fraction(x) * den) for x in r] for r in M]
        return Fraction(det(M), den**n)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _primitive(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        v = [x // g for x in v]
    for x in v:
        if x:
            return v if x > 0 else [-y for y in v]
    return v


def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Integer basis of ``{x : R x = 0}`` by fraction-free row reduction.

    Rows are combined as ``a*r_i - b*r_p`` and divided by their content, so
    every intermediate stays integral.  Each basis vector is primitive.
    """
    R = [_primitive([int(x) for x in r]) for r in rows if any(r)]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        p = next((i for i in range(rank, len(R)) if R[i][col]), None)
        if p is None:
            continue
        R[rank], R[p] = R[p], R[rank]
        piv = R[rank]
        for i in range(len(R)):
            if i != rank and R[i][col]:
                a, b = piv[col], R[i][col]
                R[i] = _primitive([a * x - b * y for x, y in zip(R[i], piv)])
        pivots.append(col)
        rank += 1
    R = R[:rank]
    free = [c for c in range(ncols) if c not in set(pivots)]
    L = lcm(*(R[i][pivots[i]] for i in range(rank))) if rank else 1
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = L
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f] * L // R[i][pc]
        basis.append(_primitive(v))
    return basis


def format_fraction(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
