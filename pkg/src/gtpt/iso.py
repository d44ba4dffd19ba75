"""Canonical labelling and isomorphism tests for small graphs.

The canonical form is the lexicographically largest relabelled adjacency
matrix over the leaves of an individualization-refinement search tree.
Refinement is colour refinement on ordered partitions, so it commutes with
relabelling.  Automorphisms are recorded whenever two leaves give the same
matrix, and children of a node that lie in one orbit of the automorphisms
fixing the node's individualized prefix are explored only once.
Cluster labels play no role here.
"""

from __future__ import annotations

from .graph import ClusteredGraph, degree_sequence
from .spectral import char_poly


def _refine(adj: list[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for c in cells:
            mk = 0
            for v in c:
                mk |= 1 << v
            masks.append(mk)
        out: list[list[int]] = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                a = adj[v]
                sig = tuple((a & mk).bit_count() for mk in masks)
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                out.append(groups[sig])
        if len(out) == len(cells):
            return out
        cells = out


class _Search:
    def __init__(self, adj: list[int]):
        self.adj = adj
        self.N = len(adj)
        self.leaves: dict[tuple[int, ...], list[int]] = {}
        self.autos: list[list[int]] = []
        self.best: tuple[int, ...] | None = None

    def certificate(self, order: list[int]) -> tuple[int, ...]:
        pos = [0] * self.N
        for i, v in enumerate(order):
            pos[v] = i
        rows = []
        for v in order:
            a, r = self.adj[v], 0
            while a:
                low = a & -a
                r |= 1 << (self.N - 1 - pos[low.bit_length() - 1])
                a ^= low
            rows.append(r)
        return tuple(rows)

    def leaf(self, order: list[int]) -> None:
        cert = self.certificate(order)
        prev = self.leaves.get(cert)
        if prev is None:
            self.leaves[cert] = order
            if self.best is None or cert > self.best:
                self.best = cert
            return
        gamma = [0] * self.N
        for a, b in zip(prev, order):
            gamma[a] = b
        self.autos.append(gamma)

    def orbit_rep(self, prefix: list[int], cell: list[int]) -> dict[int, int]:
        parent = {v: v for v in cell}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.autos:
            if any(g[p] != p for p in prefix):
                continue
            for v in cell:
                w = g[v]
                if w in parent:
                    rv, rw = find(v), find(w)
                    if rv != rw:
                        parent[max(rv, rw)] = min(rv, rw)
        return {v: find(v) for v in cell}

    def run(self, cells: list[list[int]], prefix: list[int]) -> None:
        target = None
        for idx, c in enumerate(cells):
            if len(c) > 1 and (target is None or len(c) < len(cells[target])):
                target = idx
        if target is None:
            self.leaf([c[0] for c in cells])
            return
        cell = cells[target]
        done: set[int] = set()
        for v in sorted(cell):
            reps = self.orbit_rep(prefix, cell)
            if reps[v] in {reps[u] for u in done}:
                continue
            done.add(v)
            rest = [u for u in cell if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1 :]
            self.run(_refine(self.adj, child), prefix + [v])


def canonical_form_masks(adj: list[int]) -> bytes:
    """Canonical byte string for a graph given as neighbour bitmasks."""
    N = len(adj)
    width = max(1, (N + 7) // 8)
    # isolated vertices are interchangeable: canonize the rest, append them last
    live = [v for v in range(N) if adj[v]]
    k = len(live)
    rows: tuple[int, ...] = ()
    if k:
        index = {v: i for i, v in enumerate(live)}
        sub = []
        for v in live:
            a, r = adj[v], 0
            while a:
                low = a & -a
                r |= 1 << index[low.bit_length() - 1]
                a ^= low
            sub.append(r)
        s = _Search(sub)
        s.run(_refine(sub, [list(range(k))]), [])
        rows = tuple(r << (N - k) for r in s.best)
    rows += (0,) * (N - k)
    return N.to_bytes(2, "big") + b"".join(r.to_bytes(width, "big") for r in rows)


def canonical_form(G: ClusteredGraph) -> bytes:
    """Equal for two graphs exactly when they are isomorphic (clusters ignored)."""
    return canonical_form_masks(G.neighbor_masks())


def automorphism_count_bound(G: ClusteredGraph) -> int:
    """Number of automorphisms discovered while canonizing (diagnostic only)."""
    s = _Search(G.neighbor_masks())
    if G.order:
        s.run(_refine(s.adj, [list(range(G.order))]), [])
    return len(s.autos)


def are_isomorphic(G: ClusteredGraph, H: ClusteredGraph) -> bool:
    if G.order != H.order or G.size != H.size:
        return False
    if degree_sequence(G) != degree_sequence(H):
        return False
    if char_poly(G) != char_poly(H):
        return False
    return canonical_form(G) == canonical_form(H)
