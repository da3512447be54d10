"""Vertex and edge orderings for the greedy coloring framework.

The catalog covers index-based, degree-based (static and dynamic),
distance-2, triangle/triangle-core, multi-property, and egonet-volume
selection criteria. Static criteria sort once by a per-vertex score;
dynamic criteria (dlf, ido, kcore aka slo, their distance-2 variants, and
the edge-based triangle template) maintain counts under removal or
coloring. All orderings are deterministic given (graph, method, direction,
tiebreak, seed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .decompose import (
    CoreDecomposition,
    TrussDecomposition,
    edge_triangles,
    kcore_decompose,
    triangle_core_decompose,
    vertex_triangles,
)
from .graph import Graph

__all__ = [
    "Ordering",
    "EdgeOrdering",
    "ScoreContext",
    "CATALOG",
    "DYNAMIC_METHODS",
    "compute_ordering",
    "dynamic_triangle_ordering",
    "edge_order_to_vertex_order",
    "static_scores",
    "local_rank",
    "canonical_method",
]

MAX_TO_MIN = "max-to-min"
MIN_TO_MAX = "min-to-max"

# Stable CLI tokens. kcore is the smallest-last ordering; slo is an alias.
CATALOG = [
    "natural",
    "rand",
    "deg",
    "dlf",
    "ido",
    "kcore",
    "dist-two-deg",
    "dist-two-dlf",
    "dist-two-ido",
    "dist-two-kcore",
    "tri",
    "tcore-max",
    "kcore-deg",
    "tri-deg",
    "tri-kcore",
    "tri-kcore-deg",
    "deg-vol",
    "kcore-vol",
    "tri-vol",
    "tcore-vol",
    "kcore-deg-vol",
    "tri-kcore-vol",
    "tri-kc-deg-vol",
]
ALIASES = {"slo": "kcore"}

DYNAMIC_METHODS = {"dlf", "ido", "kcore", "dist-two-dlf", "dist-two-ido", "dist-two-kcore"}

# Methods whose score needs triangle counts / core numbers / truss numbers.
_NEEDS_TRI = {
    "tri",
    "tri-deg",
    "tri-kcore",
    "tri-kcore-deg",
    "tri-vol",
    "kcore-deg-vol",
    "tri-kcore-vol",
    "tri-kc-deg-vol",
}
_NEEDS_CORE = {
    "kcore",
    "kcore-deg",
    "tri-kcore",
    "tri-kcore-deg",
    "kcore-vol",
    "tri-kcore-vol",
    "tri-kc-deg-vol",
}
_NEEDS_TRUSS = {"tcore-max", "tcore-vol"}

_DEFAULT_DIRECTION = {"natural": MIN_TO_MAX}  # everything else defaults to max-to-min


def canonical_method(method: str) -> str:
    m = method.strip().lower()
    m = ALIASES.get(m, m)
    if m not in CATALOG:
        raise ValueError(f"unknown ordering method {method!r}; valid: {', '.join(CATALOG)}")
    return m


@dataclass(frozen=True)
class Ordering:
    """A vertex permutation with the metadata that produced it."""

    sequence: np.ndarray
    method: str
    direction: str = MAX_TO_MIN
    tiebreak: str = "high-id"
    seed: int | None = None

    def __post_init__(self):
        seq = np.ascontiguousarray(self.sequence, dtype=np.int64)
        seq.setflags(write=False)
        object.__setattr__(self, "sequence", seq)

    def __len__(self) -> int:
        return int(self.sequence.shape[0])

    def is_permutation(self) -> bool:
        n = len(self)
        if n == 0:
            return True
        counts = np.bincount(self.sequence, minlength=n)
        return counts.shape[0] == n and bool(np.all(counts == 1))


@dataclass(frozen=True)
class EdgeOrdering:
    """An edge permutation from the dynamic triangle template.

    ``peel_values`` holds, per edge id, the bucket value at removal; for the
    slt variant this is the monotone peel level whose value + 2 equals the
    edge's triangle-core number.
    """

    sequence: np.ndarray
    variant: str
    peel_values: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return int(self.sequence.shape[0])


class ScoreContext:
    """Lazily computed, cached per-vertex / per-edge score arrays.

    Acts as the named score registry backing the ordering catalog: degrees,
    triangle counts, core numbers, edge triangle counts, and triangle-core
    numbers are computed on first use and shared across orderings.
    """

    def __init__(self, g: Graph, *, threads: int | None = None):
        self.g = g
        self.threads = threads

    @cached_property
    def deg(self) -> np.ndarray:
        return self.g.degrees.astype(np.int64)

    @cached_property
    def tri(self) -> np.ndarray:
        return vertex_triangles(self.g, threads=self.threads)

    @cached_property
    def core_decomposition(self) -> CoreDecomposition:
        return kcore_decompose(self.g)

    @property
    def core(self) -> np.ndarray:
        return self.core_decomposition.core

    @cached_property
    def etri(self) -> np.ndarray:
        return edge_triangles(self.g, threads=self.threads)

    @cached_property
    def truss_decomposition(self) -> TrussDecomposition:
        return triangle_core_decompose(self.g, self.etri)

    @property
    def truss(self) -> np.ndarray:
        return self.truss_decomposition.truss

    @cached_property
    def dist2(self) -> np.ndarray:
        return _dist2_counts(self.g)


def _segment_sum(g: Graph, per_arc: np.ndarray) -> np.ndarray:
    """Exact int64 segment sums of arc values into their source vertex."""
    cs = np.concatenate([np.zeros(1, dtype=np.int64), np.cumsum(per_arc, dtype=np.int64)])
    return cs[g.offsets[1:]] - cs[g.offsets[:-1]]


def _dist2_counts(g: Graph) -> np.ndarray:
    """Unique vertices within one or two hops of each vertex."""
    return _kernels.dist2_kernel(g.offsets, g.nbrs, g.n)


def _edge_truss_max(g: Graph, truss: np.ndarray) -> np.ndarray:
    out = np.zeros(g.n, dtype=np.int64)
    if g.m:
        np.maximum.at(out, np.repeat(np.arange(g.n), g.degrees), truss[g.arc_eids])
    return out


def static_scores(method: str, ctx: ScoreContext, *, seed: int | None = None) -> np.ndarray:
    """Per-vertex selection score f(v) for a static catalog method.

    Products are computed in int64. Raises for the dynamic methods, which
    have no fixed per-vertex score.
    """
    m = canonical_method(method)
    g = ctx.g
    if m == "natural":
        return np.arange(g.n, dtype=np.int64)
    if m == "rand":
        rng = np.random.default_rng(seed)
        return rng.permutation(g.n).astype(np.int64)
    if m == "deg":
        return ctx.deg
    if m == "kcore":
        return ctx.core.astype(np.int64)
    if m == "tri":
        return ctx.tri
    if m == "dist-two-deg":
        return ctx.dist2
    if m == "tcore-max":
        return _edge_truss_max(g, ctx.truss)
    if m == "kcore-deg":
        return ctx.core * ctx.deg
    if m == "tri-deg":
        return ctx.tri * ctx.deg
    if m == "tri-kcore":
        return ctx.tri * ctx.core
    if m == "tri-kcore-deg":
        return ctx.tri * ctx.core * ctx.deg
    if m == "deg-vol":
        return _segment_sum(g, ctx.deg[g.nbrs])
    if m == "kcore-vol":
        return _segment_sum(g, ctx.core[g.nbrs])
    if m == "tri-vol":
        return _segment_sum(g, ctx.tri[g.nbrs])
    if m == "tcore-vol":
        return _segment_sum(g, ctx.truss[g.arc_eids])
    if m == "kcore-deg-vol":
        # catalog formula: egonet volume of tr(w) * d(w)
        return _segment_sum(g, (ctx.tri * ctx.deg)[g.nbrs])
    if m == "tri-kcore-vol":
        return _segment_sum(g, (ctx.tri * ctx.core)[g.nbrs])
    if m == "tri-kc-deg-vol":
        return _segment_sum(g, (ctx.tri * ctx.core * ctx.deg)[g.nbrs])
    raise ValueError(f"method {m!r} has no static score (dynamic ordering)")


def _sort_by_score(
    scores: np.ndarray,
    direction: str,
    tiebreak: str,
    ctx: ScoreContext | None,
    seed: int | None = None,
) -> np.ndarray:
    n = scores.shape[0]
    ids = np.arange(n, dtype=np.int64)
    primary = -scores if direction == MAX_TO_MIN else scores
    keys = [primary]
    if tiebreak.startswith("property:"):
        name = tiebreak.split(":", 1)[1]
        if ctx is None:
            raise ValueError("property tie-break requires a ScoreContext")
        keys.append(-static_scores(name, ctx, seed=seed))
        keys.append(-ids)
    elif tiebreak == "high-id":
        keys.append(-ids)
    elif tiebreak == "low-id":
        keys.append(ids)
    else:
        raise ValueError(f"unknown tiebreak policy {tiebreak!r}")
    # np.lexsort sorts by the last key first
    return np.lexsort(tuple(reversed(keys))).astype(np.int64)


class _FifoBuckets:
    """Array-backed FIFO buckets over integer values with O(1) moves."""

    def __init__(self, values: np.ndarray, max_value: int):
        n = values.shape[0]
        self.value = values.astype(np.int64).copy()
        self.head = np.full(max_value + 2, -1, dtype=np.int64)
        self.tail = np.full(max_value + 2, -1, dtype=np.int64)
        self.prev = np.full(n, -1, dtype=np.int64)
        self.next = np.full(n, -1, dtype=np.int64)
        self.present = np.zeros(n, dtype=bool)
        for i in range(n):
            self.push(i)

    def push(self, i: int) -> None:
        v = self.value[i]
        t = self.tail[v]
        self.prev[i] = t
        self.next[i] = -1
        if t == -1:
            self.head[v] = i
        else:
            self.next[t] = i
        self.tail[v] = i
        self.present[i] = True

    def remove(self, i: int) -> None:
        v = self.value[i]
        p, nx = self.prev[i], self.next[i]
        if p == -1:
            self.head[v] = nx
        else:
            self.next[p] = nx
        if nx == -1:
            self.tail[v] = p
        else:
            self.prev[nx] = p
        self.present[i] = False

    def move(self, i: int, new_value: int) -> None:
        self.remove(i)
        self.value[i] = new_value
        self.push(i)

    def pop_min(self, ptr: int) -> tuple[int, int]:
        while self.head[ptr] == -1:
            ptr += 1
        i = self.head[ptr]
        self.remove(i)
        return i, ptr

    def pop_max(self, ptr: int) -> tuple[int, int]:
        while ptr > 0 and self.head[ptr] == -1:
            ptr -= 1
        i = self.head[ptr]
        self.remove(i)
        return i, ptr


def _dynamic_degree_order(g: Graph, find_max: bool, init_to_degree: bool) -> np.ndarray:
    """Selection order for dlf (max forward degree) / ido (max back degree).

    Buckets are filled in ascending id order and ties pop FIFO.
    """
    n = g.n
    deg = g.degrees.astype(np.int64)
    init = deg.copy() if init_to_degree else np.zeros(n, dtype=np.int64)
    bk = _FifoBuckets(init, int(deg.max()) if n else 0)
    selected = np.zeros(n, dtype=bool)
    order = np.empty(n, dtype=np.int64)
    ptr = int(init.max()) if (n and find_max) else 0
    for t in range(n):
        if find_max:
            v, ptr = bk.pop_max(ptr)
        else:
            v, ptr = bk.pop_min(ptr)
        order[t] = v
        selected[v] = True
        for u in g.neighbors(v):
            if not selected[u]:
                nv = bk.value[u] + (-1 if init_to_degree else 1)
                bk.move(u, nv)
                if find_max and nv > ptr:
                    ptr = nv
                if not find_max and nv < ptr:
                    ptr = nv
    return order


def _ball2(g: Graph, v: int, alive: np.ndarray | None = None) -> list[int]:
    """Vertices at distance 1 or 2 from v (restricted to alive vertices)."""
    seen = {v}
    out = []
    for u in g.neighbors(v):
        if alive is not None and not alive[u]:
            continue
        if u not in seen:
            seen.add(u)
            out.append(int(u))
    for u in list(out):
        for w in g.neighbors(u):
            if alive is not None and not alive[w]:
                continue
            if w not in seen:
                seen.add(w)
                out.append(int(w))
    return out


def _dist_two_dynamic_order(g: Graph, kind: str, find_max: bool) -> np.ndarray:
    """dist-two-dlf / dist-two-ido selection orders (ball-2 count updates)."""
    n = g.n
    d2 = _dist2_counts(g)
    if kind == "dlf":
        init = d2.copy()
        delta = -1
    else:
        init = np.zeros(n, dtype=np.int64)
        delta = 1
    bk = _FifoBuckets(init, int(d2.max()) if n else 0)
    selected = np.zeros(n, dtype=bool)
    order = np.empty(n, dtype=np.int64)
    ptr = int(init.max()) if (n and find_max) else 0
    for t in range(n):
        if find_max:
            v, ptr = bk.pop_max(ptr)
        else:
            v, ptr = bk.pop_min(ptr)
        order[t] = v
        selected[v] = True
        for u in _ball2(g, v):
            if not selected[u]:
                nv = bk.value[u] + delta
                bk.move(u, nv)
                if find_max and nv > ptr:
                    ptr = nv
                elif not find_max and nv < ptr:
                    ptr = nv
    return order


def _dist_two_kcore_peel(g: Graph) -> np.ndarray:
    """Experimental: smallest-last peel on residual 2-hop degree."""
    n = g.n
    alive = np.ones(n, dtype=bool)
    counts = _dist2_counts(g)
    bk = _FifoBuckets(counts, int(counts.max()) if n else 0)
    order = np.empty(n, dtype=np.int64)
    ptr = 0
    for t in range(n):
        v, ptr = bk.pop_min(ptr)
        order[t] = v
        alive[v] = False
        for u in _ball2(g, v, alive):
            nv = len(_ball2(g, u, alive))
            if nv != bk.value[u]:
                bk.move(u, nv)
                if nv < ptr:
                    ptr = nv
    return order


def compute_ordering(
    g: Graph,
    method: str,
    *,
    ctx: ScoreContext | None = None,
    direction: str | None = None,
    tiebreak: str = "high-id",
    seed: int | None = None,
) -> Ordering:
    """Build a vertex ordering from the catalog.

    Static methods sort by their score under ``direction`` with the chosen
    tie-break (default: higher id first). Dynamic methods follow their
    removal/selection process and resolve find ties FIFO; for kcore (slo)
    and dist-two-kcore the default direction emits the reverse of the
    min-peel, which is the order that carries the K(G)+1 coloring
    guarantee. rand ignores direction; a missing seed is drawn from entropy
    and recorded.
    """
    m = canonical_method(method)
    if direction is None:
        direction = _DEFAULT_DIRECTION.get(m, MAX_TO_MIN)
    if direction not in (MAX_TO_MIN, MIN_TO_MAX):
        raise ValueError(f"unknown direction {direction!r}")
    if ctx is None:
        ctx = ScoreContext(g)

    if m == "rand":
        if seed is None:
            seed = int(np.random.SeedSequence().entropy) % (2**63)
        seq = np.random.default_rng(seed).permutation(g.n).astype(np.int64)
        return Ordering(seq, m, direction, "none", seed)

    if m == "kcore":
        peel = ctx.core_decomposition.peel_order
        seq = peel[::-1].copy() if direction == MAX_TO_MIN else peel.copy()
        return Ordering(seq, m, direction, "peel", seed)
    if m == "dist-two-kcore":
        peel = _dist_two_kcore_peel(g)
        seq = peel[::-1].copy() if direction == MAX_TO_MIN else peel.copy()
        return Ordering(seq, m, direction, "peel", seed)
    if m in ("dlf", "ido"):
        find_max = direction == MAX_TO_MIN
        seq = _dynamic_degree_order(g, find_max, init_to_degree=(m == "dlf"))
        return Ordering(seq, m, direction, "fifo", seed)
    if m in ("dist-two-dlf", "dist-two-ido"):
        seq = _dist_two_dynamic_order(g, m.rsplit("-", 1)[1], direction == MAX_TO_MIN)
        return Ordering(seq, m, direction, "fifo", seed)

    scores = static_scores(m, ctx, seed=seed)
    seq = _sort_by_score(scores, direction, tiebreak, ctx, seed=seed)
    return Ordering(seq, m, direction, tiebreak, seed)


def local_rank(
    g: Graph,
    method: str,
    ctx: ScoreContext,
    *,
    direction: str = MAX_TO_MIN,
    tiebreak: str = "high-id",
    seed: int | None = None,
) -> np.ndarray:
    """Unique per-vertex rank realizing a static catalog order.

    Sorting any vertex subset by ascending rank reproduces the global
    ordering restricted to it; used for neighborhood-local orderings.
    """
    m = canonical_method(method)
    if m in DYNAMIC_METHODS:
        raise ValueError(f"local orderings must be static; {m!r} is dynamic (use its score, e.g. kcore -> K(v))")
    scores = static_scores(m, ctx, seed=seed)
    order = _sort_by_score(scores, direction, tiebreak, ctx, seed=seed)
    rank = np.empty(g.n, dtype=np.int64)
    rank[order] = np.arange(g.n, dtype=np.int64)
    return rank


# ---------------------------------------------------------------------------
# Dynamic triangle ordering template (edge based)
# ---------------------------------------------------------------------------

_TRIANGLE_VARIANTS = ("it", "slt", "lft")


def dynamic_triangle_ordering(g: Graph, etri: np.ndarray | None, variant: str) -> EdgeOrdering:
    """Peel edges by dynamic triangle counts.

    Variants: ``it`` starts all counts at zero, pops the max, and increments
    companions (+1); ``slt`` starts at the edge triangle counts, pops the
    min, decrements companions; ``lft`` starts at the counts, pops the max,
    decrements. Ties pop FIFO within a bucket. For slt, ``peel_values`` is
    the monotone level at removal (level + 2 = triangle-core number).
    """
    if variant not in _TRIANGLE_VARIANTS:
        raise ValueError(f"unknown triangle ordering variant {variant!r}; valid: {_TRIANGLE_VARIANTS}")
    m = g.m
    if variant == "it":
        init = np.zeros(m, dtype=np.int64)
    else:
        if etri is None:
            raise ValueError(f"variant {variant!r} requires edge triangle counts")
        etri = np.asarray(etri, dtype=np.int64)
        if etri.shape != (m,):
            raise ValueError("edge triangle counts must have one entry per edge")
        init = etri
    max_val = int(init.max() + (m if variant == "it" else 0)) if m else 0
    bk = _FifoBuckets(init, max_val)
    removed = np.zeros(m, dtype=bool)
    seq = np.empty(m, dtype=np.int64)
    values = np.zeros(m, dtype=np.int64)
    find_max = variant in ("it", "lft")
    delta = 1 if variant == "it" else -1
    ptr = int(init.max()) if (m and find_max) else 0
    stamp = np.full(g.n, -1, dtype=np.int64)
    sval = np.zeros(g.n, dtype=np.int64)
    level = 0
    for t in range(m):
        if find_max:
            e, ptr = bk.pop_max(ptr)
            values[e] = bk.value[e]
        else:
            e, ptr = bk.pop_min(ptr)
            level = max(level, int(bk.value[e]))
            values[e] = level
        seq[t] = e
        removed[e] = True
        u, v = int(g.edge_u[e]), int(g.edge_v[e])
        lo, hi = g.offsets[u], g.offsets[u + 1]
        for j in range(lo, hi):
            f = g.arc_eids[j]
            if not removed[f]:
                stamp[g.nbrs[j]] = e
                sval[g.nbrs[j]] = f
        lo, hi = g.offsets[v], g.offsets[v + 1]
        for j in range(lo, hi):
            w = g.nbrs[j]
            gg = g.arc_eids[j]
            if not removed[gg] and stamp[w] == e:
                f = int(sval[w])
                for c in (f, int(gg)):
                    nv = bk.value[c] + delta
                    bk.move(c, nv)
                    if find_max and nv > ptr:
                        ptr = nv
                    elif not find_max and nv < ptr:
                        ptr = nv
    return EdgeOrdering(sequence=seq, variant=variant, peel_values=values)


def edge_order_to_vertex_order(eo: EdgeOrdering, g: Graph, *, reverse: bool = False) -> Ordering:
    """Rank vertices by the first appearance of an incident edge.

    ``reverse`` scans the edge sequence backwards (useful to turn a min-peel
    edge order into a coloring order). Isolated or untouched vertices are
    appended last in ascending id order.
    """
    if len(eo) != g.m:
        raise ValueError("edge ordering does not cover all edges")
    seen = np.zeros(g.n, dtype=bool)
    out: list[int] = []
    seq = eo.sequence[::-1] if reverse else eo.sequence
    for e in seq:
        for x in (int(g.edge_u[e]), int(g.edge_v[e])):
            if not seen[x]:
                seen[x] = True
                out.append(x)
    for v in range(g.n):
        if not seen[v]:
            out.append(v)
    return Ordering(
        np.array(out, dtype=np.int64),
        method=f"edge-{eo.variant}" + ("-rev" if reverse else ""),
        direction=MAX_TO_MIN,
        tiebreak="edge-order",
    )
