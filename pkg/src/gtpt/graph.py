"""Clustered graphs, block adjacency matrices and (de)serialization.

A clustered graph has ``n`` clusters of ``m`` vertices each.  Vertex ``v_{i,j}``
is labelled ``(i, j)`` with 1-based cluster ``i`` and position ``j``.  Isolated
vertices are implicit: the vertex set is always the full ``n x m`` grid.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class VertexLabel(NamedTuple):
    cluster: int
    position: int

    def __str__(self) -> str:
        return f"v_{self.cluster}_{self.position}"


Edge = tuple[VertexLabel, VertexLabel]
Matrix = tuple[tuple[int, ...], ...]


class GraphError(ValueError):
    """Raised for malformed clustered graphs or out-of-range labels."""


def _label(obj) -> VertexLabel:
    try:
        i, j = obj
        return VertexLabel(int(i), int(j))
    except (TypeError, ValueError) as exc:
        raise GraphError(f"bad vertex label {obj!r}") from exc


@dataclass(frozen=True)
class ClusteredGraph:
    """Simple undirected graph on the vertex grid ``{1..n} x {1..m}``.

    Build instances with :func:`from_edges`; ``edges`` is kept sorted with
    each pair ordered ``(u, v)`` with ``u < v``.
    """

    n: int
    m: int
    edges: tuple[Edge, ...]

    @property
    def order(self) -> int:
        return self.n * self.m

    @property
    def size(self) -> int:
        return len(self.edges)

    def vertices(self) -> list[VertexLabel]:
        return [VertexLabel(i, j) for i in range(1, self.n + 1) for j in range(1, self.m + 1)]

    def index(self, v: VertexLabel) -> int:
        """0-based row of ``v`` in the full adjacency matrix."""
        return (v.cluster - 1) * self.m + (v.position - 1)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_edge(self, u, v) -> bool:
        u, v = _label(u), _label(v)
        return (min(u, v), max(u, v)) in self.edge_set()

    def neighbor_masks(self) -> list[int]:
        """Adjacency rows as integer bitmasks over 0-based vertex indices."""
        masks = [0] * self.order
        for u, v in self.edges:
            a, b = self.index(u), self.index(v)
            masks[a] |= 1 << b
            masks[b] |= 1 << a
        return masks

    def adjacency(self) -> np.ndarray:
        """Dense ``mn x mn`` 0/1 adjacency matrix (int64)."""
        A = np.zeros((self.order, self.order), dtype=np.int64)
        for u, v in self.edges:
            a, b = self.index(u), self.index(v)
            A[a, b] = A[b, a] = 1
        return A

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "edges": [[list(u), list(v)] for u, v in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"

    def __repr__(self) -> str:
        body = ", ".join(f"{tuple(u)}-{tuple(v)}" for u, v in self.edges)
        return f"ClusteredGraph(n={self.n}, m={self.m}, edges=[{body}])"


def from_edges(n: int, m: int, edges: Iterable) -> ClusteredGraph:
    """Validate and canonicalize an edge list into a :class:`ClusteredGraph`.

    ``edges`` holds pairs of labels, each label a ``(cluster, position)`` pair.
    Duplicate edges (in either orientation) collapse to one.
    """
    if int(n) < 1 or int(m) < 1:
        raise GraphError(f"n and m must be >= 1, got n={n}, m={m}")
    n, m = int(n), int(m)
    out = set()
    for e in edges:
        try:
            a, b = e
        except (TypeError, ValueError) as exc:
            raise GraphError(f"bad edge {e!r}") from exc
        u, v = _label(a), _label(b)
        for w in (u, v):
            if not (1 <= w.cluster <= n and 1 <= w.position <= m):
                raise GraphError(f"label {tuple(w)} out of range for n={n}, m={m}")
        if u == v:
            raise GraphError(f"self-loop at {tuple(u)}")
        out.add((min(u, v), max(u, v)))
    return ClusteredGraph(n, m, tuple(sorted(out)))


def empty_graph(n: int, m: int) -> ClusteredGraph:
    return from_edges(n, m, ())


def from_adjacency(n: int, m: int, A) -> ClusteredGraph:
    """Inverse of :meth:`ClusteredGraph.adjacency`; ``A`` must be symmetric 0/1."""
    A = np.asarray(A)
    N = n * m
    if A.shape != (N, N):
        raise GraphError(f"adjacency shape {A.shape} does not match n*m={N}")
    if not np.array_equal(A, A.T) or np.any(np.diag(A)):
        raise GraphError("adjacency must be symmetric with zero diagonal")
    rows, cols = np.nonzero(np.triu(A, 1))
    lab = lambda k: (int(k) // m + 1, int(k) % m + 1)  # noqa: E731
    return from_edges(n, m, [(lab(r), lab(c)) for r, c in zip(rows, cols)])


# --- block matrices -------------------------------------------------------


@dataclass(frozen=True)
class BlockAdjacency:
    """``n x n`` grid of ``m x m`` 0/1 blocks; ``blocks[i][j]`` is A_{i+1,j+1}."""

    n: int
    m: int
    blocks: tuple[tuple[Matrix, ...], ...]

    def block(self, i: int, j: int) -> Matrix:
        """1-based block accessor."""
        return self.blocks[i - 1][j - 1]

    def distinct_blocks(self) -> list[Matrix]:
        seen: dict[Matrix, None] = {}
        for row in self.blocks:
            for b in row:
                seen.setdefault(b, None)
        return list(seen)

    def check(self) -> None:
        """Raise :class:`GraphError` unless the global symmetry invariants hold."""
        for i in range(self.n):
            for j in range(self.n):
                if self.blocks[j][i] != transpose(self.blocks[i][j]):
                    raise GraphError(f"block ({j + 1},{i + 1}) is not the transpose of ({i + 1},{j + 1})")
            d = self.blocks[i][i]
            if any(d[k][k] for k in range(self.m)):
                raise GraphError(f"diagonal block {i + 1} has a self-loop")


def transpose(M: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*M)) if M else ()


def block_matrix(G: ClusteredGraph) -> BlockAdjacency:
    n, m = G.n, G.m
    grid = [[[[0] * m for _ in range(m)] for _ in range(n)] for _ in range(n)]
    for u, v in G.edges:
        grid[u.cluster - 1][v.cluster - 1][u.position - 1][v.position - 1] = 1
        grid[v.cluster - 1][u.cluster - 1][v.position - 1][u.position - 1] = 1
    blocks = tuple(tuple(tuple(tuple(r) for r in grid[i][j]) for j in range(n)) for i in range(n))
    return BlockAdjacency(n, m, blocks)


def from_blocks(A: BlockAdjacency) -> ClusteredGraph:
    A.check()
    edges = []
    for i in range(A.n):
        for j in range(i, A.n):
            B = A.blocks[i][j]
            for k in range(A.m):
                for l in range(A.m):
                    if B[k][l] and (i, k) < (j, l):
                        edges.append(((i + 1, k + 1), (j + 1, l + 1)))
    return from_edges(A.n, A.m, edges)


# --- subgraphs and simple invariants --------------------------------------


def induced_bipartite(G: ClusteredGraph, i: int, j: int) -> ClusteredGraph:
    """The subgraph ``<C_i, C_j>``.

    For ``i != j`` the result has two clusters (``C_i`` relabelled 1, ``C_j``
    relabelled 2) and only the edges running between them.  For ``i == j`` it
    is the single cluster ``C_i`` with its internal edges.
    """
    for k in (i, j):
        if not 1 <= k <= G.n:
            raise GraphError(f"cluster index {k} out of range 1..{G.n}")
    if i == j:
        keep = [
            ((1, u.position), (1, v.position))
            for u, v in G.edges
            if u.cluster == v.cluster == i
        ]
        return from_edges(1, G.m, keep)
    rename = {i: 1, j: 2}
    keep = [
        ((rename[u.cluster], u.position), (rename[v.cluster], v.position))
        for u, v in G.edges
        if {u.cluster, v.cluster} == {i, j}
    ]
    return from_edges(2, G.m, keep)


def degree_sequence(G: ClusteredGraph) -> list[int]:
    deg = [0] * G.order
    for u, v in G.edges:
        deg[G.index(u)] += 1
        deg[G.index(v)] += 1
    return sorted(deg, reverse=True)


def relabel(G: ClusteredGraph, mapping, n: int | None = None, m: int | None = None) -> ClusteredGraph:
    """Apply a label map (callable or dict) to every edge endpoint."""
    f = mapping if callable(mapping) else mapping.__getitem__
    return from_edges(
        G.n if n is None else n,
        G.m if m is None else m,
        [(f(u), f(v)) for u, v in G.edges],
    )


# --- serialization --------------------------------------------------------


def from_dict(data: dict) -> ClusteredGraph:
    try:
        return from_edges(data["n"], data["m"], data.get("edges", []))
    except KeyError as exc:
        raise GraphError(f"graph JSON missing field {exc}") from exc


def loads(text: str) -> ClusteredGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise GraphError("graph JSON must be an object")
    return from_dict(data)


def load(path) -> ClusteredGraph:
    with open(path) as fh:
        return loads(fh.read())


def dump(G: ClusteredGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(G.to_json())


def to_dot(G: ClusteredGraph, name: str = "G") -> str:
    """Graphviz source; each cluster is one ``rank=same`` row."""
    lines = [f"graph {name} {{"]
    for i in range(1, G.n + 1):
        names = "; ".join(str(VertexLabel(i, j)) for j in range(1, G.m + 1))
        lines.append(f"  {{ rank=same; {names}; }}")
    for u, v in G.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
