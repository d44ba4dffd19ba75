"""Sufficient conditions for ``G`` and ``G^tau`` to be cospectral.

Two levels are provided and cross-check each other:

* neighbourhood level: counting common neighbours between clusters
  (:func:`commuting_condition`, :func:`normality_condition`);
* matrix level: exact products of the blocks (:func:`blocks_commuting_normal`).

The constructive side looks for one nonsingular rational ``X`` with
``X A^t = A X`` for every block ``A``.  Then ``diag(X, ..., X)`` conjugates
``A(G)`` into ``A(G^tau)``.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import exact
from .graph import ClusteredGraph, GraphError, Matrix, VertexLabel, block_matrix
from .spectral import are_cospectral
from .transpose import partial_transpose

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000


class NeighborhoodIndexSet(NamedTuple):
    source: VertexLabel
    target_cluster: int
    indices: frozenset[int]


class ConditionResult(NamedTuple):
    holds: bool
    violation: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class SimilarityWitness:
    """Nonsingular ``X`` with ``X A^t = A X`` for each verified block."""

    matrix: tuple[tuple[Fraction, ...], ...]
    verified_blocks: tuple = ()
    trials: int = 0

    @property
    def order(self) -> int:
        return len(self.matrix)

    def conjugates(self, A: Sequence[Sequence[int]]) -> bool:
        return exact.matmul(self.matrix, exact.transpose(A)) == exact.matmul(A, self.matrix)

    def determinant(self) -> Fraction:
        return Fraction(exact.det(self.matrix))

    def to_strings(self) -> list[list[str]]:
        return [[exact.format_fraction(x) for x in row] for row in self.matrix]


@dataclass(frozen=True)
class CospectralCertificate:
    """``diag(X, ..., X)`` conjugates ``A(G)`` into ``A(G^tau)``."""

    graph: ClusteredGraph
    witness: SimilarityWitness
    blocks: tuple[Matrix, ...] = field(repr=False)

    def conjugator(self) -> list[list[Fraction]]:
        n, m = self.graph.n, self.graph.m
        P = [[Fraction(0)] * (n * m) for _ in range(n * m)]
        for b in range(n):
            for r in range(m):
                for c in range(m):
                    P[b * m + r][b * m + c] = self.witness.matrix[r][c]
        return P

    def verify(self) -> bool:
        """Check ``P A(G^tau) = A(G) P`` on the full matrices, exactly."""
        P = self.conjugator()
        A = self.graph.adjacency().tolist()
        At = partial_transpose(self.graph).adjacency().tolist()
        return exact.matmul(P, At) == exact.matmul(A, P) and exact.det(P) != 0


# --- neighbourhood level --------------------------------------------------


def nbd_index_set(G: ClusteredGraph, v, j: int) -> NeighborhoodIndexSet:
    v = VertexLabel(*v)
    if not (1 <= v.cluster <= G.n and 1 <= v.position <= G.m):
        raise GraphError(f"vertex {tuple(v)} out of range")
    if not 1 <= j <= G.n:
        raise GraphError(f"cluster index {j} out of range 1..{G.n}")
    row = block_matrix(G).block(v.cluster, j)[v.position - 1]
    return NeighborhoodIndexSet(v, j, frozenset(b + 1 for b, x in enumerate(row) if x))


def _nbd_table(G: ClusteredGraph) -> dict:
    A = block_matrix(G)
    return {
        (i, j, a): frozenset(b for b in range(1, G.m + 1) if A.block(i, j)[a - 1][b - 1])
        for i in range(1, G.n + 1)
        for j in range(1, G.n + 1)
        for a in range(1, G.m + 1)
    }


def commuting_condition(G: ClusteredGraph) -> ConditionResult:
    """Common-neighbour counts that amount to pairwise commuting blocks.

    A violation is reported as ``((i1, j1), (i2, j2), alpha, beta)``.
    """
    nbd = _nbd_table(G)
    pairs = [(i, j) for i in range(1, G.n + 1) for j in range(1, G.n + 1)]
    for (i1, j1), (i2, j2) in itertools.product(pairs, repeat=2):
        for a in range(1, G.m + 1):
            for b in range(1, G.m + 1):
                lhs = len(nbd[i1, j1, a] & nbd[j2, i2, b])
                rhs = len(nbd[j1, i1, b] & nbd[i2, j2, a])
                if lhs != rhs:
                    return ConditionResult(False, ((i1, j1), (i2, j2), a, b))
    return ConditionResult(True)


def normality_condition(G: ClusteredGraph) -> ConditionResult:
    """Common-neighbour counts that amount to normal off-diagonal blocks.

    A violation is reported as ``(i, j, alpha, beta)``.
    """
    nbd = _nbd_table(G)
    for i in range(1, G.n + 1):
        for j in range(1, G.n + 1):
            if i == j:
                continue
            for a in range(1, G.m + 1):
                for b in range(a, G.m + 1):
                    if len(nbd[i, j, a] & nbd[i, j, b]) != len(nbd[j, i, a] & nbd[j, i, b]):
                        return ConditionResult(False, (i, j, a, b))
    return ConditionResult(True)


# --- matrix level ---------------------------------------------------------


def is_normal_binary(A: Sequence[Sequence[int]]) -> bool:
    if not row_col_sums_match(A):
        return False
    At = exact.transpose(A)
    return exact.matmul(A, At) == exact.matmul(At, A)


def row_col_sums_match(A: Sequence[Sequence[int]]) -> bool:
    """Necessary condition for a 0/1 matrix to be normal: r_i == c_i for all i."""
    return [sum(r) for r in A] == [sum(c) for c in zip(*A)]


def blocks_commuting_normal(A) -> bool:
    """Every block normal and every pair of blocks commuting (exact)."""
    blocks = A.distinct_blocks()
    if not all(is_normal_binary(b) for b in blocks):
        return False
    for X, Y in itertools.combinations(blocks, 2):
        if exact.matmul(X, Y) != exact.matmul(Y, X):
            return False
    return True


# --- similarity witnesses -------------------------------------------------


def similarity_system(A: Sequence[Sequence[int]]) -> list[list[int]]:
    """Rows of ``(I (x) A - A (x) I) vec(X) = 0``, i.e. ``A X = X A^t``.

    ``vec`` stacks columns, so ``x[c*m + r] = X[r][c]``.
    """
    m = len(A)
    I = exact.identity(m)
    left = exact.kron(I, A)
    right = exact.kron(A, I)
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(left, right)]


def _unvec(x: Sequence, m: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x[c * m + r]) for c in range(m)) for r in range(m))


def _search_nonsingular(basis: list[list[int]], m: int, seed: int, budget: int):
    trials = 0
    for v in basis:
        trials += 1
        X = [[v[c * m + r] for c in range(m)] for r in range(m)]
        if exact.det(X) != 0:
            return v, trials
    d = len(basis)
    if d == 0:
        return None, trials
    # small combinations get at most half of the budget
    for coeffs in itertools.product(range(-2, 3), repeat=d):
        if trials >= budget // 2:
            break
        if not any(coeffs) or sum(1 for c in coeffs if c) < 2:
            continue
        trials += 1
        v = [sum(c * b[k] for c, b in zip(coeffs, basis)) for k in range(m * m)]
        X = [[v[c * m + r] for c in range(m)] for r in range(m)]
        if exact.det(X) != 0:
            return v, trials
    rng = random.Random(seed)
    while trials < budget:
        trials += 1
        coeffs = [rng.randint(-10, 10) for _ in range(d)]
        v = [sum(c * b[k] for c, b in zip(coeffs, basis)) for k in range(m * m)]
        X = [[v[c * m + r] for c in range(m)] for r in range(m)]
        if exact.det(X) != 0:
            return v, trials
    return None, trials


def similarity_witness(
    blocks: Sequence[Sequence[Sequence[int]]],
    *,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    labels: Sequence | None = None,
) -> SimilarityWitness | None:
    """Common nonsingular ``X`` with ``X A^t = A X`` for all ``blocks``.

    Solves the stacked linear system exactly, then searches the solution
    space for a nonsingular element: basis vectors first, then small integer
    combinations, then seeded random combinations until ``budget`` trials.
    Returns ``None`` when the search gives up; that is not a proof that no
    witness exists.
    """
    blocks = [tuple(tuple(int(x) for x in r) for r in b) for b in blocks]
    if not blocks:
        raise ValueError("empty block family")
    m = len(blocks[0])
    if any(len(b) != m or any(len(r) != m for r in b) for b in blocks):
        raise ValueError("all blocks must be square of the same order")
    rows: list[list[int]] = []
    for b in dict.fromkeys(blocks):
        rows.extend(similarity_system(b))
    basis = exact.nullspace(rows, m * m)
    v, trials = _search_nonsingular(basis, m, seed, budget)
    if v is None:
        log.warning(
            "no nonsingular witness after %d trials (solution space dim %d, m=%d)",
            trials, len(basis), m,
        )
        return None
    W = SimilarityWitness(
        _unvec(v, m),
        tuple(labels) if labels is not None else tuple(range(len(blocks))),
        trials,
    )
    if W.determinant() == 0 or not all(W.conjugates(b) for b in blocks):
        raise RuntimeError("witness failed exact verification")
    return W


def is_similar_to_transpose(A: Sequence[Sequence[int]], *, seed: int = 0) -> SimilarityWitness | None:
    return similarity_witness([A], seed=seed)


def certify_cospectral_by_blocks(G: ClusteredGraph, *, seed: int = 0, budget: int = DEFAULT_BUDGET):
    """Block-diagonal conjugation certificate that ``G`` and ``G^tau`` are cospectral.

    Returns ``None`` if no common witness for the distinct blocks was found.
    """
    A = block_matrix(G)
    labels: dict[Matrix, tuple[int, int]] = {}
    for i in range(1, G.n + 1):
        for j in range(1, G.n + 1):
            labels.setdefault(A.block(i, j), (i, j))
    blocks = list(labels)
    W = similarity_witness(blocks, seed=seed, budget=budget, labels=list(labels.values()))
    if W is None:
        return None
    if not are_cospectral(G, partial_transpose(G)):
        raise RuntimeError("certificate found but characteristic polynomials differ")
    return CospectralCertificate(G, W, tuple(blocks))
