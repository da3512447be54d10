"""Graph storage, edge-list ingestion, and global statistics.

The graph is immutable once built: a CSR-style adjacency (offsets + sorted
neighbor array) with a stable undirected edge id per edge. Small dense
graphs additionally carry a packed adjacency bitset for O(1) edge tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Graph",
    "GraphStats",
    "GraphInputError",
    "load_edge_list",
    "compute_stats",
    "STATS_CSV_COLUMNS",
]

# Bitset adjacency is built below these limits (configurable per call).
DENSE_BITMAP_MAX_N = 20_000
DENSE_BITMAP_MIN_DENSITY = 0.05


class GraphInputError(Exception):
    """Raised when an edge-list file cannot be parsed."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph in compressed adjacency form.

    Attributes:
        n: vertex count (vertices are 0..n-1 after compaction)
        m: undirected edge count
        offsets: int64[n+1], CSR row pointers into ``nbrs``
        nbrs: int32[2m], neighbor ids, sorted ascending within each row
        arc_eids: int32[2m], undirected edge id of each arc (aligned with nbrs)
        edge_u / edge_v: int32[m], endpoints of edge id e with edge_u < edge_v
        original_ids: int64[n], input id of each compacted vertex
        dropped_self_loops / dropped_duplicates: ingestion counters
        bitset: packed row-major adjacency bits (uint64) or None
    """

    n: int
    m: int
    offsets: np.ndarray
    nbrs: np.ndarray
    arc_eids: np.ndarray
    edge_u: np.ndarray
    edge_v: np.ndarray
    original_ids: np.ndarray
    dropped_self_loops: int = 0
    dropped_duplicates: int = 0
    bitset: np.ndarray | None = field(default=None, repr=False)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    def neighbors(self, v: int) -> np.ndarray:
        return self.nbrs[self.offsets[v] : self.offsets[v + 1]]

    def incident_edges(self, v: int) -> np.ndarray:
        return self.arc_eids[self.offsets[v] : self.offsets[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        if self.bitset is not None:
            return bool((self.bitset[u, v >> 6] >> (v & 63)) & 1)
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return i < row.size and row[i] == v

    def edge_endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        return self.edge_u, self.edge_v

    @staticmethod
    def from_edges(
        edges: np.ndarray,
        *,
        dense_bitmap_max_n: int = DENSE_BITMAP_MAX_N,
        dense_bitmap_min_density: float = DENSE_BITMAP_MIN_DENSITY,
        _dropped_self_loops: int = 0,
        _dropped_duplicates: int = 0,
        _extra_ids: np.ndarray | None = None,
    ) -> "Graph":
        """Build a graph from an (k, 2) array of integer endpoint pairs.

        Self-loops and duplicate/reciprocal pairs are dropped; ids are
        compacted to 0..n-1 preserving ascending input-id order. Vertices
        that only ever appeared in dropped edges are kept (isolated).
        """
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        loops = edges[:, 0] == edges[:, 1]
        n_loops = int(loops.sum()) + _dropped_self_loops
        loop_ids = edges[loops, 0]
        edges = edges[~loops]

        lo = np.minimum(edges[:, 0], edges[:, 1])
        hi = np.maximum(edges[:, 0], edges[:, 1])
        pairs = np.stack([lo, hi], axis=1)
        if pairs.shape[0]:
            uniq = np.unique(pairs, axis=0)
        else:
            uniq = pairs
        n_dups = pairs.shape[0] - uniq.shape[0] + _dropped_duplicates

        seen = [uniq.ravel(), loop_ids]
        if _extra_ids is not None:
            seen.append(np.asarray(_extra_ids, dtype=np.int64))
        ids = np.unique(np.concatenate(seen)) if any(a.size for a in seen) else np.empty(0, np.int64)
        n = int(ids.size)
        m = int(uniq.shape[0])

        eu = np.searchsorted(ids, uniq[:, 0]).astype(np.int32)
        ev = np.searchsorted(ids, uniq[:, 1]).astype(np.int32)
        # Edge ids follow (u, v) lexicographic order for determinism.
        order = np.lexsort((ev, eu))
        eu, ev = eu[order], ev[order]
        eid = np.arange(m, dtype=np.int32)

        arc_src = np.concatenate([eu, ev])
        arc_dst = np.concatenate([ev, eu])
        arc_eid = np.concatenate([eid, eid])
        perm = np.lexsort((arc_dst, arc_src))
        arc_src, arc_dst, arc_eid = arc_src[perm], arc_dst[perm], arc_eid[perm]

        offsets = np.zeros(n + 1, dtype=np.int64)
        if m:
            np.cumsum(np.bincount(arc_src, minlength=n), out=offsets[1:])

        bitset = None
        if 1 < n <= dense_bitmap_max_n:
            density = 2.0 * m / (n * (n - 1))
            if density >= dense_bitmap_min_density:
                words = (n + 63) >> 6
                bitset = np.zeros((n, words), dtype=np.uint64)
                np.bitwise_or.at(
                    bitset,
                    (arc_src, arc_dst >> 6),
                    np.uint64(1) << (arc_dst & 63).astype(np.uint64),
                )
                bitset.setflags(write=False)

        for arr in (offsets, arc_dst, arc_eid, eu, ev, ids):
            arr.setflags(write=False)
        return Graph(
            n=n,
            m=m,
            offsets=offsets,
            nbrs=arc_dst.astype(np.int32),
            arc_eids=arc_eid.astype(np.int32),
            edge_u=eu,
            edge_v=ev,
            original_ids=ids,
            dropped_self_loops=n_loops,
            dropped_duplicates=n_dups,
            bitset=bitset,
        )

    def check_invariants(self) -> None:
        """Assert structural invariants; raises AssertionError on violation."""
        deg = self.degrees
        assert int(deg.sum()) == 2 * self.m, "degree sum != 2m"
        for v in range(self.n):
            row = self.neighbors(v)
            assert np.all(np.diff(row) > 0), f"row {v} unsorted or duplicated"
            assert v not in row, f"self-loop at {v}"
        assert np.all(self.edge_u < self.edge_v)


def load_edge_list(
    path,
    *,
    base_index: int = 0,
    dense_bitmap_max_n: int = DENSE_BITMAP_MAX_N,
    dense_bitmap_min_density: float = DENSE_BITMAP_MIN_DENSITY,
) -> Graph:
    """Parse a whitespace edge list into a Graph.

    Lines starting with '#' or '%' are comments; each data line holds two
    integer endpoints with an optional third weight token (ignored). For
    ``.mtx`` files the first non-comment line is the size header and is
    skipped. ``base_index`` is subtracted from every id before compaction.
    Self-loops and duplicate edges are always dropped (counters kept).
    """
    is_mtx = str(path).lower().endswith(".mtx")
    src: list[int] = []
    dst: list[int] = []
    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise GraphInputError(f"cannot open {path}: {exc}") from exc
    with fh:
        skip_header = is_mtx
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line[0] in "#%":
                continue
            if skip_header:
                skip_header = False
                continue
            tok = line.split()
            if len(tok) < 2:
                raise GraphInputError(f"{path}:{lineno}: expected two integer tokens")
            try:
                u = int(tok[0])
                v = int(tok[1])
            except ValueError as exc:
                raise GraphInputError(f"{path}:{lineno}: non-integer token") from exc
            src.append(u - base_index)
            dst.append(v - base_index)
    edges = np.array([src, dst], dtype=np.int64).T if src else np.empty((0, 2), np.int64)
    if edges.size and edges.min() < 0:
        raise GraphInputError(f"{path}: negative vertex id after base-index adjustment")
    return Graph.from_edges(
        edges,
        dense_bitmap_max_n=dense_bitmap_max_n,
        dense_bitmap_min_density=dense_bitmap_min_density,
    )


# Frozen column order for CSV reports (matches the bound-table layout).
STATS_CSV_COLUMNS = [
    "n",
    "m",
    "triangle_incidence",
    "density",
    "avg_degree",
    "assortativity",
    "clustering_global",
    "tr_avg",
    "tr_max",
    "max_degree",
]


@dataclass(frozen=True)
class GraphStats:
    """Whole-graph statistics.

    ``triangle_incidence`` counts (vertex, triangle) incidences, i.e. three
    per distinct triangle; ``triangles`` is the distinct count. Undefined
    quantities (density on n < 2, correlation with zero variance) are
    reported as 0.0 with a note appended to ``flags``.
    """

    n: int
    m: int
    triangle_incidence: int
    triangles: int
    density: float
    avg_degree: float
    max_degree: int
    clustering_global: float
    assortativity: float
    tr_avg: float
    tr_max: int
    flags: tuple[str, ...] = ()

    def to_row(self) -> list:
        return [
            self.n,
            self.m,
            self.triangle_incidence,
            self.density,
            self.avg_degree,
            self.assortativity,
            self.clustering_global,
            self.tr_avg,
            self.tr_max,
            self.max_degree,
        ]

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "m": self.m,
            "triangle_incidence": self.triangle_incidence,
            "triangles": self.triangles,
            "density": self.density,
            "avg_degree": self.avg_degree,
            "max_degree": self.max_degree,
            "clustering_global": self.clustering_global,
            "assortativity": self.assortativity,
            "tr_avg": self.tr_avg,
            "tr_max": self.tr_max,
            "flags": list(self.flags),
        }
        return json.dumps(payload, sort_keys=True)


def compute_stats(g: Graph, tri: np.ndarray) -> GraphStats:
    """Derive the statistics bundle from a graph and its per-vertex triangle counts."""
    tri = np.asarray(tri)
    if tri.shape != (g.n,):
        raise ValueError("triangle counts must have one entry per vertex")
    flags: list[str] = []
    incidence = int(tri.sum())
    deg = g.degrees.astype(np.float64)

    if g.n >= 2:
        density = 2.0 * g.m / (g.n * (g.n - 1))
    else:
        density = 0.0
        flags.append("density_undefined")
    avg_degree = 2.0 * g.m / g.n if g.n else 0.0

    wedges = float((deg * (deg - 1.0) / 2.0).sum())
    clustering = incidence / wedges if wedges > 0 else 0.0
    if wedges == 0:
        flags.append("clustering_undefined")

    # Pearson correlation of endpoint degrees over both arc orientations.
    if g.m >= 1:
        du = deg[g.edge_u]
        dv = deg[g.edge_v]
        x = np.concatenate([du, dv])
        y = np.concatenate([dv, du])
        sx = x.std()
        if sx > 0:
            assortativity = float(((x - x.mean()) * (y - y.mean())).mean() / (sx * x.std()))
        else:
            assortativity = 0.0
            flags.append("assortativity_undefined")
    else:
        assortativity = 0.0
        flags.append("assortativity_undefined")

    return GraphStats(
        n=g.n,
        m=g.m,
        triangle_incidence=incidence,
        triangles=incidence // 3,
        density=density,
        avg_degree=avg_degree,
        max_degree=g.max_degree,
        clustering_global=clustering,
        assortativity=assortativity,
        tr_avg=incidence / g.n if g.n else 0.0,
        tr_max=int(tri.max()) if g.n else 0,
        flags=tuple(flags),
    )
