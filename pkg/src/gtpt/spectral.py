"""Exact characteristic polynomials and floating spectra of adjacency matrices.

Cospectrality is decided on integer coefficients only.  Floating eigenvalues
exist for reports.

:func:`power_sum_fingerprints` is the batched filter used by the enumerator:
it computes ``tr(A^k)`` for ``k = 1..N`` modulo several primes whose product
exceeds the largest possible power sum, so equal fingerprints certify equal
power sums, and by Newton's identities equal characteristic polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graph import ClusteredGraph


@dataclass(frozen=True)
class CharPoly:
    """Monic integer polynomial; ``coefficients[k]`` multiplies ``x^(deg-k)``."""

    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in self.coefficients:
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        d = self.degree
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            p = d - k
            mono = "" if p == 0 else ("x" if p == 1 else f"x^{p}")
            coef = str(abs(c)) if (abs(c) != 1 or p == 0) else ""
            sign = "-" if c < 0 else "+"
            terms.append(f"{sign} {coef}{mono}")
        if not terms:
            return "0"
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _faddeev_leverrier(rows: list[int], N: int) -> tuple[int, ...]:
    # rows[i]: bitmask of neighbours of vertex i.  A*M is a sum of rows of M.
    nbrs = [[j for j in range(N) if rows[i] >> j & 1] for i in range(N)]
    coeffs = [1]
    M = [[0] * N for _ in range(N)]
    c = 1
    for k in range(1, N + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        AM = []
        for i in range(N):
            acc = [0] * N
            for j in nbrs[i]:
                Mj = M[j]
                for t in range(N):
                    acc[t] += Mj[t]
            AM.append(acc)
        for i in range(N):
            AM[i][i] += c
        M = AM
        # c_k = -tr(A M_k) / k
        tr = 0
        for i in range(N):
            for j in nbrs[i]:
                tr += M[j][i]
        assert tr % k == 0
        c = -tr // k
        coeffs.append(c)
    return tuple(coeffs)


@lru_cache(maxsize=4096)
def char_poly(G: ClusteredGraph) -> CharPoly:
    """Characteristic polynomial ``det(xI - A(G))`` in exact integers."""
    return CharPoly(_faddeev_leverrier(G.neighbor_masks(), G.order))


def char_poly_matrix(A) -> CharPoly:
    """Same as :func:`char_poly` for an arbitrary symmetric 0/1 array."""
    A = np.asarray(A)
    N = A.shape[0]
    rows = [sum(1 << j for j in range(N) if A[i, j]) for i in range(N)]
    return CharPoly(_faddeev_leverrier(rows, N))


def are_cospectral(G: ClusteredGraph, H: ClusteredGraph) -> bool:
    if G.order != H.order:
        raise ValueError(f"vertex counts differ: {G.order} vs {H.order}")
    return char_poly(G) == char_poly(H)


def approx_eigenvalues(G: ClusteredGraph) -> list[float]:
    """Eigenvalues of ``A(G)``, descending (symmetric eigensolver)."""
    if G.order == 0:
        return []
    w = np.linalg.eigvalsh(G.adjacency().astype(float))
    return [float(x) for x in w[::-1]]


# --- batched exact filter --------------------------------------------------

# Primes below 2**28 keep N * p**2 inside int64 for N <= 64.
_PRIMES = (268435399, 268435367, 268435361, 268435331, 268435313, 268435291)


def _primes_for(N: int) -> tuple[int, ...]:
    # power sums are bounded by N * (N - 1)**N
    bound = N * max(N - 1, 1) ** N
    out, prod = [], 1
    for p in _PRIMES:
        out.append(p)
        prod *= p
        if prod > bound:
            return tuple(out)
    raise ValueError(f"too many vertices for the power-sum filter: {N}")


def power_sum_fingerprints(A: np.ndarray) -> np.ndarray:
    """``tr(A^k) mod p`` for k = 1..N and every needed prime.

    ``A`` is a stack ``(batch, N, N)`` of 0/1 matrices; the result has shape
    ``(batch, len(primes) * N)``.  Two matrices have equal fingerprints iff
    they have the same characteristic polynomial.
    """
    A = np.asarray(A, dtype=np.int64)
    if A.ndim == 2:
        A = A[None]
    N = A.shape[-1]
    if N > 64:
        raise ValueError("power-sum filter supports at most 64 vertices")
    cols = []
    for p in _primes_for(N):
        M = A.copy()
        for _ in range(N):
            cols.append(np.trace(M, axis1=1, axis2=2) % p)
            M = np.matmul(M, A) % p
    return np.stack(cols, axis=-1)


def cospectral_mask(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Row-wise exact cospectrality of two stacks of adjacency matrices."""
    return np.all(power_sum_fingerprints(A) == power_sum_fingerprints(B), axis=-1)


def newton_coefficients(power_sums: list[int]) -> tuple[int, ...]:
    """Characteristic polynomial from exact power sums ``p_1..p_N``."""
    N = len(power_sums)
    e = [1]
    for k in range(1, N + 1):
        s = sum((-1) ** (i - 1) * e[k - i] * power_sums[i - 1] for i in range(1, k + 1))
        assert s % k == 0
        e.append(s // k)
    return tuple((-1) ** k * e[k] for k in range(N + 1))


def eigen_product_check(G: ClusteredGraph) -> float:
    """Relative gap between prod(eigenvalues) and (-1)^N * constant term."""
    cp = char_poly(G)
    target = (-1) ** cp.degree * cp.coefficients[-1]
    prod = math.prod(approx_eigenvalues(G))
    return abs(prod - target) / max(1.0, abs(target))
