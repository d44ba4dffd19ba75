"""Exhaustive enumeration of GTPT-cospectral, non-isomorphic model graphs.

A model fixes a skeleton (paths, cycles, identity attachments) and one free
``m x m`` inter-cluster block whose ``2^(m^2)`` fillings are the candidates.
Every candidate is pushed through the model pipeline (alternate clustering,
Procedure 2, extra links) and kept when it is cospectral with its GTPT but not
isomorphic to it.

The final graph depends on the free bits as a union of per-bit edge sets, so
the pipeline is run once per bit through the library builders and the
candidate adjacency matrices are then assembled in numpy batches.

Candidates related by a common position permutation ``sigma`` that fixes the
skeleton give isomorphic graphs with isomorphic transposes.  Only the smallest
candidate of each orbit is examined, and labelled counts are recovered from
orbit sizes.
"""

from __future__ import annotations

import enum
import itertools
import logging
import os
import time
from dataclasses import dataclass, field
from multiprocessing import get_context
from typing import Sequence

import numpy as np

from .constructions import CopyOf, IDENTITY, alternate_clustering, path_edges, procedure_1, procedure_2
from .graph import ClusteredGraph, degree_sequence, from_edges
from .iso import are_isomorphic, canonical_form_masks
from .spectral import are_cospectral, char_poly, cospectral_mask
from .transpose import is_partially_symmetric, partial_transpose

log = logging.getLogger(__name__)

DEFAULT_MAX_CANDIDATES = 1 << 24
CHUNK = 4096


class EnumerationError(ValueError):
    pass


class CountingMode(str, enum.Enum):
    LABELED = "labeled"
    DEDUP_GRAPH = "dedup-graph"
    DEDUP_PAIR = "dedup-pair"

    @classmethod
    def parse(cls, value) -> "CountingMode":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        for mode in cls:
            if key in (mode.value, mode.name.lower().replace("_", "-")):
                return mode
        raise EnumerationError(f"unknown counting mode {value!r}")


@dataclass(frozen=True)
class _Recipe:
    c1: str | None  # "path", "cycle" or None (edgeless)
    c2: str | None
    pipeline: str  # "direct", "attach", "mirror"
    link: str | None = None  # closing links on the added vertices


MODELS: dict[str, _Recipe] = {
    "1a": _Recipe(None, "path", "direct"),
    "1b": _Recipe(None, "cycle", "direct"),
    "2": _Recipe(None, None, "attach"),
    "3a": _Recipe(None, None, "mirror"),
    "3b": _Recipe(None, "path", "mirror"),
    "3c": _Recipe(None, "cycle", "mirror"),
    "4a": _Recipe(None, "path", "mirror", "path"),
    "4b": _Recipe("path", "path", "mirror", "path"),
    "4c": _Recipe(None, "cycle", "mirror", "cycle"),
}


@dataclass(frozen=True)
class ModelSpec:
    """One enumeration row.

    ``m`` and ``n`` are the cluster size and cluster count of the final graph.
    For models 1a and 1b ``n = 2``, for model 2 ``n = 3``.  For the mirrored
    models (3a-4c) the base graph has two clusters of size ``n``; alternate
    clustering and mirroring turn it into ``n`` clusters of size ``m = 3``.
    ``n`` may be omitted where it is fixed by the model.
    """

    model_id: str
    m: int
    n: int | None = None
    counting_mode: CountingMode = CountingMode.DEDUP_GRAPH
    mirror_intra: bool = True

    def __post_init__(self):
        mid = str(self.model_id).strip().lower()
        object.__setattr__(self, "model_id", mid)
        object.__setattr__(self, "counting_mode", CountingMode.parse(self.counting_mode))
        if mid not in MODELS:
            raise EnumerationError(f"unsupported model {self.model_id!r}; choose from {', '.join(MODELS)}")
        recipe = MODELS[mid]
        if recipe.pipeline == "mirror":
            if self.m != 3:
                raise EnumerationError(f"model {mid} always yields clusters of size m=3 (got m={self.m})")
            if self.n is None:
                raise EnumerationError(f"model {mid} needs n (the base cluster size)")
            if self.n < 2:
                raise EnumerationError("n must be at least 2")
        else:
            fixed = 2 if recipe.pipeline == "direct" else 3
            if self.n is None:
                object.__setattr__(self, "n", fixed)
            elif self.n != fixed:
                raise EnumerationError(f"model {mid} fixes n={fixed} (got n={self.n})")
            if self.m < 1:
                raise EnumerationError("m must be at least 1")

    @classmethod
    def from_base(cls, model_id: str, base_m: int, **kw) -> "ModelSpec":
        """Spec from the size of the two-cluster base graph."""
        if MODELS.get(str(model_id).lower(), _Recipe(None, None, "")).pipeline == "mirror":
            return cls(model_id, 3, base_m, **kw)
        return cls(model_id, base_m, None, **kw)

    @property
    def recipe(self) -> _Recipe:
        return MODELS[self.model_id]

    @property
    def base_m(self) -> int:
        return self.n if self.recipe.pipeline == "mirror" else self.m

    @property
    def candidates(self) -> int:
        return 1 << (self.base_m**2)

    def describe(self) -> dict:
        return {
            "model": self.model_id,
            "m": self.m,
            "n": self.n,
            "base_m": self.base_m,
            "mode": self.counting_mode.value,
        }


# --- model construction ---------------------------------------------------


def _intra(kind: str | None, cluster: int, m: int) -> list:
    if kind is None:
        return []
    return path_edges(cluster, m, cycle=(kind == "cycle"))


@dataclass(frozen=True)
class ModelBase:
    """Base graph of a model: fixed edges plus the free block slot(s)."""

    spec: ModelSpec
    n: int
    m: int
    skeleton: tuple
    free_slots: tuple[tuple[int, int], ...]

    def base_graph(self, bits: int) -> ClusteredGraph:
        """Base graph with free block ``(1, 2)`` filled from ``bits``.

        Bit ``r * m + c`` (0-based) is entry ``(r+1, c+1)`` of the block.
        """
        m = self.m
        edges = list(self.skeleton)
        edges += [((1, r + 1), (2, c + 1)) for r in range(m) for c in range(m) if bits >> (r * m + c) & 1]
        return from_edges(self.n, m, edges)


def model_base(spec: ModelSpec) -> ModelBase:
    r, m = spec.recipe, spec.base_m
    if r.pipeline == "attach":
        # two edgeless clusters plus a third attached to C_2 by I_m
        return ModelBase(spec, 3, m, tuple(((2, k), (3, k)) for k in range(1, m + 1)), ((1, 2),))
    return ModelBase(spec, 2, m, tuple(_intra(r.c1, 1, m) + _intra(r.c2, 2, m)), ((1, 2),))


def build_candidate(spec: ModelSpec, bits: int) -> ClusteredGraph:
    """Final model graph for one filling of the free block, via the builders."""
    base = model_base(spec)
    r, m = spec.recipe, base.m
    if r.pipeline == "direct":
        return base.base_graph(bits)
    if r.pipeline == "attach":
        core = ModelBase(spec, 2, m, (), ((1, 2),)).base_graph(bits)
        # D_1 = C_1, D_2 = C_2, D_3 = copy of the edgeless C_1; D_{1,2} = A_{1,2}, D_{2,3} = I
        return procedure_1(core, [1, 2, 1], {(1, 2): CopyOf(1, 2), (2, 3): IDENTITY}, check_conditions=False)
    Ga = alternate_clustering(base.base_graph(bits))
    H = procedure_2(Ga, check_conditions=False, mirror_intra=spec.mirror_intra)
    if r.link is None:
        return H
    # one new vertex per cluster (position 3); link them across clusters
    new_pos = H.m
    link = [((a, new_pos), (b, new_pos)) for (_, a), (_, b) in path_edges(1, H.n, cycle=(r.link == "cycle"))]
    return from_edges(H.n, H.m, list(H.edges) + link)


@dataclass
class _Layout:
    n: int
    m: int
    fixed: np.ndarray  # (N, N)
    contrib: np.ndarray  # (bits, N, N)


def _layout(spec: ModelSpec) -> _Layout:
    empty = build_candidate(spec, 0)
    fixed = empty.adjacency()
    k = spec.base_m**2
    contrib = np.zeros((k,) + fixed.shape, dtype=np.int64)
    for b in range(k):
        G = build_candidate(spec, 1 << b)
        if (G.n, G.m) != (empty.n, empty.m):
            raise AssertionError("pipeline changed shape")
        contrib[b] = G.adjacency() & ~fixed
    return _Layout(empty.n, empty.m, fixed, contrib)


def _assemble(layout: _Layout, bits: np.ndarray) -> np.ndarray:
    k = layout.contrib.shape[0]
    sel = ((bits[:, None] >> np.arange(k, dtype=np.int64)) & 1).astype(np.int64)
    A = np.einsum("bk,kij->bij", sel, layout.contrib)
    return np.minimum(A + layout.fixed, 1)


def _gtpt_batch(A: np.ndarray, n: int, m: int) -> np.ndarray:
    # transposing every block; diagonal blocks are symmetric so this is exact
    B = A.reshape(-1, n, m, n, m)
    return np.ascontiguousarray(B.transpose(0, 1, 4, 3, 2)).reshape(A.shape)


# --- symmetry -------------------------------------------------------------


def _automorphisms(m: int, kind: str | None) -> set[tuple[int, ...]]:
    perms = set(itertools.permutations(range(m)))
    if kind is None:
        return perms
    E = {frozenset((a - 1, b - 1)) for (_, a), (_, b) in path_edges(1, m, cycle=(kind == "cycle"))}
    return {p for p in perms if {frozenset((p[a], p[b])) for a, b in map(tuple, E)} == E}


def symmetry_group(spec: ModelSpec) -> list[tuple[int, ...]]:
    """Position permutations fixing the skeleton; they act on the free block by ``P A P^t``."""
    r, m = spec.recipe, spec.base_m
    group = _automorphisms(m, r.c1) & _automorphisms(m, r.c2)
    if r.link is not None:
        group &= _automorphisms(m, r.link)
    return sorted(group)


def _act(bits: np.ndarray, sigma: Sequence[int], m: int) -> np.ndarray:
    out = np.zeros_like(bits)
    for r in range(m):
        for c in range(m):
            out |= ((bits >> (r * m + c)) & 1) << (sigma[r] * m + sigma[c])
    return out


def orbit_representatives(spec: ModelSpec, use_symmetry: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Smallest element of each orbit and the orbit sizes."""
    total = spec.candidates
    bits = np.arange(total, dtype=np.int64)
    if not use_symmetry:
        return bits, np.ones(total, dtype=np.int64)
    group = symmetry_group(spec)
    m = spec.base_m
    orbit_min = bits.copy()
    stab = np.zeros(total, dtype=np.int64)
    for sigma in group:
        img = _act(bits, sigma, m)
        np.minimum(orbit_min, img, out=orbit_min)
        stab += img == bits
    keep = orbit_min == bits
    return bits[keep], len(group) // stab[keep]


# --- enumeration ----------------------------------------------------------


@dataclass
class EnumerationReport:
    spec: ModelSpec
    kappa: int
    candidates_scanned: int
    pairs: list[tuple[ClusteredGraph, ClusteredGraph]]
    elapsed: float
    counts: dict[CountingMode, int] = field(default_factory=dict)
    cospectral: int = 0

    def csv_row(self) -> dict:
        return {
            "model": self.spec.model_id,
            "m": self.spec.m,
            "n": self.spec.n,
            "mode": self.spec.counting_mode.value,
            "kappa": self.kappa,
            "scanned": self.candidates_scanned,
            "seconds": f"{self.elapsed:.3f}",
        }

    def to_dict(self, with_pairs: bool = True) -> dict:
        out = {
            **self.spec.describe(),
            "kappa": self.kappa,
            "counts": {mode.value: v for mode, v in self.counts.items()},
            "scanned": self.candidates_scanned,
            "cospectral_labeled": self.cospectral,
        }
        if with_pairs:
            out["pairs"] = [{"G": G.to_dict(), "G_tau": T.to_dict()} for G, T in self.pairs]
        return out


def max_candidates() -> int:
    raw = os.environ.get("GTPT_MAX_CANDIDATES")
    if raw is None:
        return DEFAULT_MAX_CANDIDATES
    try:
        return int(raw)
    except ValueError:
        raise EnumerationError(f"GTPT_MAX_CANDIDATES is not an integer: {raw!r}") from None


def _masks(A: np.ndarray) -> list[list[int]]:
    w = np.left_shift(np.int64(1), np.arange(A.shape[-1], dtype=np.int64))
    return (A @ w).tolist()


def _scan(spec: ModelSpec, layout: _Layout, reps: np.ndarray, sizes: np.ndarray):
    """Kept candidates in ``reps`` as (bits, orbit size, cf(G), cf(G^tau)); plus cospectral count."""
    kept, cos = [], 0
    for lo in range(0, len(reps), CHUNK):
        b, s = reps[lo : lo + CHUNK], sizes[lo : lo + CHUNK]
        A = _assemble(layout, b)
        T = _gtpt_batch(A, layout.n, layout.m)
        mask = cospectral_mask(A, T)
        cos += int(s[mask].sum())
        idx = np.flatnonzero(mask)
        if not len(idx):
            continue
        MA, MT = _masks(A[idx]), _masks(T[idx])
        for t, ga, gt in zip(idx.tolist(), MA, MT):
            cg, ct = canonical_form_masks(ga), canonical_form_masks(gt)
            if cg != ct:
                kept.append((int(b[t]), int(s[t]), cg, ct))
    return kept, cos


def _scan_job(args):
    spec, reps, sizes = args
    return _scan(spec, _layout(spec), reps, sizes)


def enumerate_kappa(
    spec: ModelSpec,
    *,
    jobs: int = 1,
    use_symmetry: bool = True,
    order_seed: int | None = None,
    limit: int | None = None,
) -> EnumerationReport:
    """Count kept candidates of ``spec`` in all counting modes.

    ``order_seed`` shuffles the iteration order (results must not change);
    ``limit`` overrides the candidate guard.
    """
    guard = max_candidates() if limit is None else limit
    if spec.candidates > guard:
        raise EnumerationError(
            f"search space {spec.candidates} exceeds the guard {guard} (set GTPT_MAX_CANDIDATES)"
        )
    t0 = time.perf_counter()
    reps, sizes = orbit_representatives(spec, use_symmetry)
    if order_seed is not None:
        perm = np.random.default_rng(order_seed).permutation(len(reps))
        reps, sizes = reps[perm], sizes[perm]
    jobs = max(1, int(jobs))
    if jobs == 1 or len(reps) < 2 * CHUNK:
        kept, cos = _scan(spec, _layout(spec), reps, sizes)
    else:
        parts = np.array_split(np.arange(len(reps)), jobs)
        with get_context("spawn").Pool(jobs) as pool:
            results = pool.map(_scan_job, [(spec, reps[p], sizes[p]) for p in parts])
        kept = [k for part, _ in results for k in part]
        cos = sum(c for _, c in results)
    kept.sort()
    labeled = sum(s for _, s, _, _ in kept)
    first: dict[bytes, tuple[int, bytes]] = {}
    for b, _, cg, ct in kept:
        first.setdefault(cg, (b, ct))
    pair_classes = {tuple(sorted((cg, ct))) for _, _, cg, ct in kept}
    counts = {
        CountingMode.LABELED: labeled,
        CountingMode.DEDUP_GRAPH: len(first),
        CountingMode.DEDUP_PAIR: len(pair_classes),
    }
    pairs = []
    for cg in sorted(first):
        G = build_candidate(spec, first[cg][0])
        T = partial_transpose(G)
        # exact re-verification on the library path
        if not are_cospectral(G, T) or are_isomorphic(G, T):
            raise AssertionError(f"candidate {first[cg][0]} failed re-verification")
        pairs.append((G, T))
    report = EnumerationReport(
        spec,
        counts[spec.counting_mode],
        spec.candidates,
        pairs,
        time.perf_counter() - t0,
        counts,
        cos,
    )
    log.info("model %s m=%s n=%s: %s", spec.model_id, spec.m, spec.n, {k.value: v for k, v in counts.items()})
    return report


def verify_pair(G: ClusteredGraph) -> dict:
    """Verdicts for ``(G, G^tau)``."""
    T = partial_transpose(G)
    return {
        "cospectral": are_cospectral(G, T),
        "isomorphic": are_isomorphic(G, T),
        "partially_symmetric": is_partially_symmetric(G),
        "charpoly": list(char_poly(G).coefficients),
        "charpoly_tau": list(char_poly(T).coefficients),
        "degree_sequences": [degree_sequence(G), degree_sequence(T)],
    }


__all__ = [
    "CountingMode", "EnumerationError", "EnumerationReport", "MODELS", "ModelBase",
    "ModelSpec", "build_candidate", "enumerate_kappa", "max_candidates", "model_base",
    "orbit_representatives", "symmetry_group", "verify_pair",
]
