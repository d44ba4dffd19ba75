"""Builders for clustered graphs whose GTPT is a cospectral mate."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from . import exact
from .conditions import commuting_condition, is_normal_binary, is_similar_to_transpose, normality_condition
from .graph import ClusteredGraph, GraphError, VertexLabel, block_matrix, from_edges


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class Zero:
    def __str__(self) -> str:
        return "zero"


@dataclass(frozen=True)
class Identity:
    def __str__(self) -> str:
        return "identity"


@dataclass(frozen=True)
class CopyOf:
    """Reuse block ``A_{i,j}`` of the source graph (``i != j``)."""

    i: int
    j: int

    def __str__(self) -> str:
        return f"copy({self.i},{self.j})"


BlockChoice = Union[Zero, Identity, CopyOf]
ZERO, IDENTITY = Zero(), Identity()


def parse_block_choice(spec) -> BlockChoice:
    """Accept ``"zero"``, ``"identity"``, ``["copy", i, j]`` or a choice object."""
    if isinstance(spec, (Zero, Identity, CopyOf)):
        return spec
    if isinstance(spec, str):
        key = spec.strip().lower()
        if key in ("zero", "0"):
            return ZERO
        if key in ("identity", "i"):
            return IDENTITY
        parts = key.replace(",", " ").replace("(", " ").replace(")", " ").split()
        if parts and parts[0] in ("copy", "copy_of"):
            spec = parts
    if isinstance(spec, (list, tuple)) and len(spec) == 3 and str(spec[0]).lower() in ("copy", "copy_of"):
        return CopyOf(int(spec[1]), int(spec[2]))
    raise ConstructionError(f"unknown block assignment {spec!r}")


def require_commuting_normal(G: ClusteredGraph) -> None:
    for name, res in (("commuting", commuting_condition(G)), ("normality", normality_condition(G))):
        if not res.holds:
            raise ConstructionError(f"{name} condition fails at {res.violation}")


# --- bipartite padding ----------------------------------------------------


def pad_bipartite(m1: int, m2: int, edges: Iterable[tuple[int, int]]) -> ClusteredGraph:
    """Bipartite graph with sides of sizes ``m1`` and ``m2``, padded to equal sides.

    ``edges`` are pairs ``(a, b)`` with ``a`` on side 1 and ``b`` on side 2.
    Isolated vertices are appended to the smaller side, which becomes
    positions ``min(m1, m2) + 1 .. max(m1, m2)`` of its cluster.
    """
    if m1 < 1 or m2 < 1:
        raise ConstructionError("both sides need at least one vertex")
    m = max(m1, m2)
    out = []
    for a, b in edges:
        if not (1 <= a <= m1 and 1 <= b <= m2):
            raise ConstructionError(f"edge {(a, b)} out of range for sides {m1}, {m2}")
        out.append(((1, a), (2, b)))
    return from_edges(2, m, out)


def pad_bipartite_graph(G: ClusteredGraph) -> ClusteredGraph:
    """Equal-sided case: validate that ``G`` is bipartite along its clusters."""
    if G.n != 2:
        raise ConstructionError("expected exactly two clusters")
    if any(u.cluster == v.cluster for u, v in G.edges):
        raise ConstructionError("input has intra-cluster edges")
    return G


# --- procedure 1 ----------------------------------------------------------


def procedure_1(
    G: ClusteredGraph,
    cluster_choices: Sequence[int],
    block_assignments: Mapping[tuple[int, int], BlockChoice] | None = None,
    *,
    check_conditions: bool = True,
) -> ClusteredGraph:
    """Assemble ``H`` from copies of clusters of ``G``.

    Cluster ``D_p`` of ``H`` is a copy of ``C_{cluster_choices[p-1]}`` (repeats
    allowed).  The block between ``D_p`` and ``D_q`` is zero, the identity, or
    a copy of an inter-cluster block ``A_{i,j}`` of ``G``.  Pairs missing from
    ``block_assignments`` are zero; an assignment for ``(q, p)`` with ``q > p``
    is read as the transpose of the ``(p, q)`` block.
    """
    k = len(cluster_choices)
    if k < 2:
        raise ConstructionError("need at least two clusters")
    for c in cluster_choices:
        if not 1 <= c <= G.n:
            raise ConstructionError(f"cluster choice {c} out of range 1..{G.n}")
    if check_conditions:
        require_commuting_normal(G)
    A = block_matrix(G)
    m = G.m

    blocks: dict[tuple[int, int], BlockChoice] = {}
    for (p, q), choice in (block_assignments or {}).items():
        choice = parse_block_choice(choice)
        if not (1 <= p <= k and 1 <= q <= k) or p == q:
            raise ConstructionError(f"invalid block position {(p, q)}")
        if isinstance(choice, CopyOf):
            if choice.i == choice.j:
                raise ConstructionError("cannot copy a diagonal block")
            if not (1 <= choice.i <= G.n and 1 <= choice.j <= G.n):
                raise ConstructionError(f"{choice} out of range")
        if p > q:
            p, q = q, p
            if isinstance(choice, CopyOf):
                choice = CopyOf(choice.j, choice.i)
        if (p, q) in blocks and blocks[p, q] != choice:
            raise ConstructionError(f"conflicting assignments for block {(p, q)}")
        blocks[p, q] = choice

    edges = []
    for p, c in enumerate(cluster_choices, start=1):
        D = A.block(c, c)
        edges += [((p, a + 1), (p, b + 1)) for a in range(m) for b in range(a + 1, m) if D[a][b]]
    for (p, q), choice in sorted(blocks.items(), key=lambda kv: kv[0]):
        if isinstance(choice, Identity):
            edges += [((p, a), (q, a)) for a in range(1, m + 1)]
        elif isinstance(choice, CopyOf):
            B = A.block(choice.i, choice.j)
            edges += [((p, a + 1), (q, b + 1)) for a in range(m) for b in range(m) if B[a][b]]
    return from_edges(k, m, edges)


# --- procedure 2 ----------------------------------------------------------


def mirror_position(m: int, position: int) -> int:
    """``f(v_{i,l}) = v_{i,2m-l}``; position ``m`` is shared by both halves."""
    return 2 * m - position


def procedure_2(
    G: ClusteredGraph,
    *,
    check_conditions: bool = True,
    mirror_intra: bool = False,
) -> ClusteredGraph:
    """Grow every cluster from ``m`` to ``2m - 1`` vertices by mirroring.

    Edges of ``G`` are kept verbatim on positions ``1..m``.  Each
    inter-cluster edge ``(v_{i,l1}, v_{j,l2})`` also yields
    ``(v_{i,2m-l1}, v_{j,2m-l2})``.  With ``mirror_intra`` the mirror image of
    intra-cluster edges is added too; by default new vertices get no
    intra-cluster edges.
    """
    if check_conditions:
        require_commuting_normal(G)
    m = G.m
    edges: list = list(G.edges)
    for u, v in G.edges:
        if u.cluster != v.cluster or mirror_intra:
            edges.append(
                (
                    (u.cluster, mirror_position(m, u.position)),
                    (v.cluster, mirror_position(m, v.position)),
                )
            )
    return from_edges(G.n, 2 * m - 1, edges)


def mirror_extend(M: Sequence[Sequence], m: int | None = None) -> list[list]:
    """Embed an ``m x m`` matrix into ``(2m-1) x (2m-1)`` with its mirror image.

    Entry ``(a, b)`` is copied to ``(a, b)`` and to ``(2m-a, 2m-b)`` (1-based).
    Applied to an inter-cluster block this is the corresponding block of
    :func:`procedure_2`; applied to a similarity witness it gives the extended
    witness of the procedure.
    """
    m = len(M) if m is None else m
    N = 2 * m - 1
    zero = type(M[0][0])(0) if m else 0
    out = [[zero] * N for _ in range(N)]
    for a in range(m):
        for b in range(m):
            x = M[a][b]
            if x:
                out[a][b] = x
                out[N - 1 - a][N - 1 - b] = x
    return out


def extend_witness(P: Sequence[Sequence]) -> list[list[Fraction]]:
    """Extended witness by the mirror overlay of :func:`mirror_extend`."""
    return [[Fraction(x) for x in row] for row in mirror_extend(P)]


def column_formula_extend(M: Sequence[Sequence]) -> list[list]:
    """Column-wise extension of an ``m x m`` matrix to ``(2m-1) x (2m-1)``.

    With ``M[:, k]`` the k-th column (1-based):

    * ``k < m``: ``[M[:, k], 0 * (m-1)]``
    * ``k = m``: ``[M[:, m], M[m-1, m], ..., M[1, m]]``
    * ``k > m``: ``[0 * m, M[m-1, 2m-k], ..., M[1, 2m-k]]``

    Unlike :func:`mirror_extend`, the last case drops ``M[m, 2m-k]``, so the
    two differ whenever the last row of ``M`` has a nonzero entry left of
    the diagonal.
    """
    m = len(M)
    N = 2 * m - 1
    zero = type(M[0][0])(0) if m else 0
    out = [[zero] * N for _ in range(N)]
    for k in range(1, N + 1):
        if k < m:
            col = [M[r][k - 1] for r in range(m)] + [zero] * (m - 1)
        elif k == m:
            col = [M[r][m - 1] for r in range(m)] + [M[r][m - 1] for r in range(m - 2, -1, -1)]
        else:
            col = [zero] * m + [M[r][2 * m - k - 1] for r in range(m - 2, -1, -1)]
        for r in range(N):
            out[r][k - 1] = col[r]
    return out


def witness_conjugates_all(P: Sequence[Sequence], G: ClusteredGraph) -> bool:
    """``P B^t = B P`` for every block of ``A(G)`` and ``det P != 0``, exactly."""
    if exact.det(P) == 0:
        return False
    Pt = [list(r) for r in P]
    return all(
        exact.matmul(Pt, exact.transpose(B)) == exact.matmul(B, Pt)
        for B in block_matrix(G).distinct_blocks()
    )


# --- alternate clustering -------------------------------------------------


def alternate_clustering(G: ClusteredGraph) -> ClusteredGraph:
    """Regroup by position: ``C'_j = {v_{1,j}, ..., v_{n,j}}``; label ``(i,j) -> (j,i)``."""
    return from_edges(
        G.m,
        G.n,
        [((u.position, u.cluster), (v.position, v.cluster)) for u, v in G.edges],
    )


# --- non-normal template --------------------------------------------------


def build_nonnormal_model(
    A: Sequence[Sequence[int]],
    n: int,
    block_assignments: Mapping[tuple[int, int], str],
) -> ClusteredGraph:
    """Edgeless clusters joined by blocks drawn from ``{A, I, 0}``.

    ``block_assignments`` maps ``(i, j)`` with ``i < j`` to ``"A"``,
    ``"identity"`` or ``"zero"``; missing pairs are zero.  ``A`` must be a
    non-normal 0/1 matrix and at least one pair must use it.
    """
    A = [[int(x) for x in r] for r in A]
    m = len(A)
    if m < 1 or any(len(r) != m for r in A) or any(x not in (0, 1) for r in A for x in r):
        raise ConstructionError("A must be a square 0/1 matrix")
    if is_normal_binary(A):
        raise ConstructionError("A is normal")
    if is_similar_to_transpose(A) is None:
        raise ConstructionError("no similarity witness found for A")
    edges = []
    used = False
    for (i, j), kind in block_assignments.items():
        kind = str(kind).strip().lower()
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise ConstructionError(f"invalid block position {(i, j)}")
        B = A if i < j else exact.transpose(A)
        i, j = min(i, j), max(i, j)
        if kind == "a":
            used = True
            edges += [((i, a + 1), (j, b + 1)) for a in range(m) for b in range(m) if B[a][b]]
        elif kind in ("identity", "i"):
            edges += [((i, a), (j, a)) for a in range(1, m + 1)]
        elif kind not in ("zero", "0"):
            raise ConstructionError(f"unknown block kind {kind!r}")
    if not used:
        raise ConstructionError("no block uses A")
    return from_edges(n, m, edges)


def path_edges(cluster: int, m: int, cycle: bool = False) -> list:
    """Path (or cycle) ``v_{c,1} - v_{c,2} - ... - v_{c,m}`` inside one cluster."""
    E = [((cluster, k), (cluster, k + 1)) for k in range(1, m)]
    if cycle and m > 2:
        E.append(((cluster, 1), (cluster, m)))
    return E


__all__ = [
    "ConstructionError", "Zero", "Identity", "CopyOf", "ZERO", "IDENTITY",
    "parse_block_choice", "pad_bipartite", "pad_bipartite_graph", "procedure_1",
    "procedure_2", "mirror_position", "mirror_extend", "extend_witness", "column_formula_extend",
    "witness_conjugates_all", "alternate_clustering", "build_nonnormal_model",
    "path_edges", "VertexLabel", "GraphError",
]
