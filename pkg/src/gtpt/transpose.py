"""Graph-theoretical partial transpose (GTPT)."""

from __future__ import annotations

from .graph import BlockAdjacency, ClusteredGraph, VertexLabel, from_edges, transpose


def partial_transpose(G: ClusteredGraph) -> ClusteredGraph:
    """Return ``G^tau``.

    Every inter-cluster edge ``(v_{i,k}, v_{j,l})`` with ``k != l`` becomes
    ``(v_{i,l}, v_{j,k})``; everything else is kept.
    """
    out = []
    for u, v in G.edges:
        if u.cluster != v.cluster and u.position != v.position:
            u, v = VertexLabel(u.cluster, v.position), VertexLabel(v.cluster, u.position)
        out.append((u, v))
    return from_edges(G.n, G.m, out)


def partial_transpose_blocks(A: BlockAdjacency) -> BlockAdjacency:
    """Transpose each block in place: ``[A_{i,j}] -> [A_{i,j}^t]``."""
    blocks = tuple(tuple(transpose(b) for b in row) for row in A.blocks)
    return BlockAdjacency(A.n, A.m, blocks)


def is_partially_symmetric(G: ClusteredGraph) -> bool:
    return partial_transpose(G).edges == G.edges
