"""Random instance generators and brute-force oracles.

The oracles share no code with the package: isomorphism by trying every
vertex permutation, determinants by the Leibniz permutation expansion.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from gtpt.graph import ClusteredGraph, from_edges


def random_graph(rng: random.Random, n: int, m: int, p: float | None = None) -> ClusteredGraph:
    p = rng.random() if p is None else p
    V = [(i, j) for i in range(1, n + 1) for j in range(1, m + 1)]
    return from_edges(n, m, [(u, v) for u, v in itertools.combinations(V, 2) if rng.random() < p])


def random_shape(rng: random.Random, lo: int = 1, hi: int = 4) -> tuple[int, int]:
    return rng.randint(lo, hi), rng.randint(lo, hi)


def circulant(first_row) -> list[list[int]]:
    m = len(first_row)
    return [[first_row[(c - r) % m] for c in range(m)] for r in range(m)]


def random_circulant(rng: random.Random, m: int, symmetric: bool = False) -> list[list[int]]:
    row = [rng.randint(0, 1) for _ in range(m)]
    if symmetric:
        row[0] = 0
        for k in range(1, m):
            row[m - k] = row[k]
    return circulant(row)


def circulant_graph(rng: random.Random, n: int, m: int) -> ClusteredGraph:
    """Every block a circulant: a commuting family of normal matrices."""
    edges = []
    for i in range(1, n + 1):
        D = random_circulant(rng, m, symmetric=True)
        edges += [((i, a + 1), (i, b + 1)) for a in range(m) for b in range(a + 1, m) if D[a][b]]
        for j in range(i + 1, n + 1):
            B = random_circulant(rng, m)
            edges += [((i, a + 1), (j, b + 1)) for a in range(m) for b in range(m) if B[a][b]]
    return from_edges(n, m, edges)


def pseudo_bipartite(rng: random.Random, m: int) -> ClusteredGraph:
    """Two clusters with identical intra-cluster edges, random edges between."""
    intra = [(a, b) for a, b in itertools.combinations(range(1, m + 1), 2) if rng.random() < 0.5]
    edges = [((c, a), (c, b)) for c in (1, 2) for a, b in intra]
    edges += [((1, a), (2, b)) for a in range(1, m + 1) for b in range(1, m + 1) if rng.random() < 0.5]
    return from_edges(2, m, edges)


def shuffled(G: ClusteredGraph, rng: random.Random) -> ClusteredGraph:
    V = G.vertices()
    img = V[:]
    rng.shuffle(img)
    f = dict(zip(V, img))
    return from_edges(G.n, G.m, [(f[u], f[v]) for u, v in G.edges])


# --- oracles --------------------------------------------------------------


def edge_slots(N: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(N), 2))


def all_adjacency(N: int) -> np.ndarray:
    """Every labelled simple graph on N vertices, indexed by edge bitmask."""
    slots = edge_slots(N)
    codes = np.arange(1 << len(slots), dtype=np.int64)
    A = np.zeros((len(codes), N, N), dtype=np.int64)
    for e, (a, b) in enumerate(slots):
        bit = (codes >> e) & 1
        A[:, a, b] = bit
        A[:, b, a] = bit
    return A


def brute_canonical_codes(N: int) -> np.ndarray:
    """Minimum edge code over all relabellings, for every graph on N vertices."""
    slots = edge_slots(N)
    index = {s: e for e, s in enumerate(slots)}
    codes = np.arange(1 << len(slots), dtype=np.int64)
    best = codes.copy()
    for perm in itertools.permutations(range(N)):
        img = np.zeros_like(codes)
        for e, (a, b) in enumerate(slots):
            x, y = perm[a], perm[b]
            img |= ((codes >> e) & 1) << index[(min(x, y), max(x, y))]
        np.minimum(best, img, out=best)
    return best


def brute_isomorphic(A: np.ndarray, B: np.ndarray) -> bool:
    N = A.shape[0]
    if A.sum() != B.sum():
        return False
    for perm in itertools.permutations(range(N)):
        p = list(perm)
        if np.array_equal(A[np.ix_(p, p)], B):
            return True
    return False


def leibniz_det(M: np.ndarray) -> np.ndarray:
    """Determinants of a stack of integer matrices by full permutation expansion."""
    M = np.asarray(M, dtype=np.int64)
    N = M.shape[-1]
    total = np.zeros(M.shape[:-2], dtype=np.int64)
    rows = np.arange(N)
    for perm in itertools.permutations(range(N)):
        inv = sum(1 for i in range(N) for j in range(i + 1, N) if perm[i] > perm[j])
        term = np.prod(M[..., rows, list(perm)], axis=-1)
        total += -term if inv % 2 else term
    return total


def charpoly_values(A: np.ndarray, xs) -> np.ndarray:
    """det(xI - A) at each integer x, shape (len(xs), batch)."""
    N = A.shape[-1]
    I = np.eye(N, dtype=np.int64)
    return np.stack([leibniz_det(x * I - A) for x in xs])


def graph_from_matrix(A: np.ndarray) -> ClusteredGraph:
    N = A.shape[0]
    return from_edges(1, N, [((1, a + 1), (1, b + 1)) for a, b in zip(*np.nonzero(np.triu(A, 1)))])
