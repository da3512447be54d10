"""Structural decompositions: triangle counts, k-core, and triangle-core.

Per-vertex and per-edge scores come back as plain integer arrays; the
decomposition results carry the score array plus its maximum and, for the
core peel, the removal order (whose reverse is the smallest-last coloring
order).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph

__all__ = [
    "vertex_triangles",
    "edge_triangles",
    "kcore_decompose",
    "triangle_core_decompose",
    "CoreDecomposition",
    "TrussDecomposition",
    "resolve_threads",
]

# Parallel counting kernels split work into a fixed number of chunks so the
# result never depends on the worker count.
_COUNT_CHUNKS = 64


def resolve_threads(threads: int | None) -> int:
    """Thread count: explicit arg, else CHROMA_THREADS, else 1."""
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("CHROMA_THREADS")
    return max(1, int(env)) if env else 1


def _set_numba_threads(threads: int) -> None:
    import numba

    threads = min(threads, numba.config.NUMBA_NUM_THREADS)
    numba.set_num_threads(max(1, threads))


def vertex_triangles(g: Graph, *, threads: int | None = None) -> np.ndarray:
    """tr(v): triangles incident to each vertex, via neighbor marking."""
    _set_numba_threads(resolve_threads(threads))
    if g.n == 0:
        return np.zeros(0, dtype=np.int64)
    return _kernels.vertex_triangles_kernel(g.offsets, g.nbrs, g.n, _COUNT_CHUNKS)


def edge_triangles(g: Graph, *, threads: int | None = None) -> np.ndarray:
    """tr(u,v): common-neighbor count of each edge's endpoints."""
    _set_numba_threads(resolve_threads(threads))
    if g.m == 0:
        return np.zeros(0, dtype=np.int64)
    return _kernels.edge_triangles_kernel(
        g.offsets, g.nbrs, g.edge_u.astype(np.int64), g.edge_v.astype(np.int64), g.n, _COUNT_CHUNKS
    )


@dataclass(frozen=True)
class CoreDecomposition:
    """Core numbers K(v), their maximum K(G), and the min-degree peel order."""

    core: np.ndarray
    max_core: int
    peel_order: np.ndarray

    def smallest_last_order(self) -> np.ndarray:
        """Coloring order with the smallest-last guarantee (reverse peel)."""
        return self.peel_order[::-1].copy()


def kcore_decompose(g: Graph) -> CoreDecomposition:
    """Bucket-based min-degree peeling in O(n + m)."""
    core, order = _kernels.kcore_peel_kernel(g.offsets, g.nbrs, g.n)
    max_core = int(core.max()) if g.n else 0
    return CoreDecomposition(core=core, max_core=max_core, peel_order=order)


@dataclass(frozen=True)
class TrussDecomposition:
    """Triangle-core numbers T(e) per edge and the maximum T(G).

    Convention: an edge of a k triangle-core participates in at least k-2
    triangles, so an isolated edge has T = 2 and a triangle's edges T = 3.
    For an edgeless graph ``max_truss`` is 1 (the vacuous bound).
    """

    truss: np.ndarray
    max_truss: int


def triangle_core_decompose(g: Graph, etri: np.ndarray) -> TrussDecomposition:
    """Min-support edge peeling; ``etri`` holds current edge triangle counts."""
    etri = np.asarray(etri)
    if etri.shape != (g.m,):
        raise ValueError("edge triangle counts must have one entry per edge")
    if g.m == 0:
        return TrussDecomposition(truss=np.zeros(0, dtype=np.int64), max_truss=1)
    level = _kernels.truss_peel_kernel(
        g.offsets,
        g.nbrs,
        g.arc_eids.astype(np.int64),
        g.edge_u.astype(np.int64),
        g.edge_v.astype(np.int64),
        etri.astype(np.int64),
        g.n,
    )
    truss = level + 2
    return TrussDecomposition(truss=truss, max_truss=int(truss.max()))
