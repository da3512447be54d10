"""Parallel coloring of every closed vertex neighborhood.

Each worker thread pulls dynamic blocks of vertices and colors the induced
neighborhood subgraphs inside a compiled, GIL-releasing kernel using
per-worker scratch. The only shared mutable state is the running maximum
color count, used for pruning; with pruning off, every per-vertex result is
independent of scheduling, so outputs are identical for any worker count.
"""

from __future__ import annotations

import json
import threading
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .bounds import heuristic_clique
from .decompose import resolve_threads
from .graph import Graph
from .ordering import MAX_TO_MIN, Ordering, ScoreContext, local_rank

__all__ = [
    "NeighborhoodResult",
    "NeighborhoodFeatures",
    "neighborhood_color_all",
    "neighborhood_feature_export",
]

DEFAULT_BLOCK_SIZE = 256

_VARIANTS = {"basic": _kernels.VARIANT_BASIC, "recolor": _kernels.VARIANT_RECOLOR}
_SEARCHES = {"vertex-centric": _kernels.SEARCH_VERTEX, "color-centric": _kernels.SEARCH_COLOR}


@dataclass(frozen=True)
class NeighborhoodResult:
    """Per-vertex neighborhood coloring outcomes plus the global maximum L."""

    colors_used: np.ndarray
    largest_class: np.ndarray
    skipped: np.ndarray
    local_max: int  # L: the greedy local coloring number
    pruned_count: int
    config: dict = field(repr=False)
    runtime_s: float = 0.0

    def to_json_summary(self) -> str:
        return json.dumps(
            {
                "L": self.local_max,
                "pruned_count": self.pruned_count,
                "runtime_s": self.runtime_s,
                "config": self.config,
            },
            sort_keys=True,
        )


def neighborhood_color_all(
    g: Graph,
    *,
    global_order: Ordering | np.ndarray | None = None,
    local_method: str = "kcore-deg-vol",
    local_direction: str = MAX_TO_MIN,
    local_tiebreak: str = "high-id",
    variant: str = "basic",
    search: str = "color-centric",
    pruning: bool = False,
    bound: np.ndarray | None = None,
    lb: int | None = None,
    open_neighborhoods: bool = False,
    threads: int | None = None,
    seed: int | None = None,
    ctx: ScoreContext | None = None,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> NeighborhoodResult:
    """Color the (closed) neighborhood of every vertex.

    ``global_order`` fixes the processing order (natural order when omitted).
    The local ordering inside each neighborhood comes from a static catalog
    method applied to the members' global scores, largest-to-smallest by
    default. With ``pruning``, vertices whose clique-normalized bound
    (K(v)+1 unless ``bound`` is given) cannot beat the clique lower bound
    ``lb`` or the running maximum are skipped, and low-bound neighbors are
    excluded from the induced subgraphs; both are computed on demand when
    not supplied.
    """
    if variant not in _VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; valid: {sorted(_VARIANTS)}")
    if search not in _SEARCHES:
        raise ValueError(f"unknown search {search!r}; valid: {sorted(_SEARCHES)}")
    ctx = ctx or ScoreContext(g, threads=threads)
    n = g.n
    workers = resolve_threads(threads)

    if global_order is None:
        verts = np.arange(n, dtype=np.int64)
    elif isinstance(global_order, Ordering):
        verts = global_order.sequence
    else:
        verts = np.ascontiguousarray(global_order, dtype=np.int64)
    if verts.shape[0] != n:
        raise ValueError("global order must cover every vertex")

    if pruning:
        if bound is None:
            bound = ctx.core + 1  # normalized with respect to cliques
        if lb is None:
            lb = heuristic_clique(g, ctx.core, threads=threads).size
    else:
        bound = np.zeros(n, dtype=np.int64) if bound is None else bound
        lb = 0
    bound = np.ascontiguousarray(bound, dtype=np.int64)

    rank = (
        local_rank(g, local_method, ctx, direction=local_direction, tiebreak=local_tiebreak, seed=seed)
        if n
        else np.zeros(0, dtype=np.int64)
    )

    colors_used = np.zeros(n, dtype=np.int64)
    largest = np.zeros(n, dtype=np.int64)
    skipped = np.zeros(n, dtype=np.uint8)
    shared_max = np.zeros(1, dtype=np.int64)
    dmax = g.max_degree

    config = {
        "local_method": local_method,
        "local_direction": local_direction,
        "local_tiebreak": local_tiebreak,
        "global_method": getattr(global_order, "method", "natural"),
        "global_direction": getattr(global_order, "direction", ""),
        "variant": variant,
        "search": search,
        "pruning": "on" if pruning else "off",
        "open": open_neighborhoods,
        "threads": workers,
        "lb": int(lb),
        "seed": seed,
    }

    t0 = time.perf_counter()
    if n:
        kernel_args = dict(
            offsets=g.offsets,
            nbrs=g.nbrs,
            rank=rank,
            bound=bound,
            lb=np.int64(lb),
            pruning=np.int64(1 if pruning else 0),
            drop_center=np.int64(1 if open_neighborhoods else 0),
            variant=np.int64(_VARIANTS[variant]),
            search=np.int64(_SEARCHES[search]),
            shared_max=shared_max,
        )
        cursor = {"next": 0}
        cursor_lock = threading.Lock()

        def worker():
            pos_tag = np.zeros(n, dtype=np.int64)
            pos_idx = np.zeros(n, dtype=np.int64)
            members = np.empty(dmax + 2, dtype=np.int64)
            loc_color = np.zeros(dmax + 3, dtype=np.int64)
            used = np.full(dmax + 3, -1, dtype=np.int64)
            conflicts = np.zeros(dmax + 4, dtype=np.int64)
            confv = np.zeros(dmax + 4, dtype=np.int64)
            mark = np.full(2 * (dmax + 4), -1, dtype=np.int64)
            head = np.full(dmax + 4, -1, dtype=np.int64)
            nxt = np.full(dmax + 3, -1, dtype=np.int64)
            while True:
                with cursor_lock:
                    lo = cursor["next"]
                    if lo >= n:
                        return
                    cursor["next"] = lo + block_size
                hi = min(n, lo + block_size)
                _kernels.neighborhood_block_kernel(
                    verts=verts[lo:hi],
                    pos_tag=pos_tag,
                    pos_idx=pos_idx,
                    members=members,
                    loc_color=loc_color,
                    used=used,
                    conflicts=conflicts,
                    confv=confv,
                    mark=mark,
                    head=head,
                    nxt=nxt,
                    colors_out=colors_used,
                    largest_out=largest,
                    skipped_out=skipped,
                    **kernel_args,
                )

        if workers == 1:
            worker()
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futs = [pool.submit(worker) for _ in range(workers)]
                for f in futs:
                    f.result()
    runtime = time.perf_counter() - t0

    return NeighborhoodResult(
        colors_used=colors_used,
        largest_class=largest,
        skipped=skipped.astype(bool),
        local_max=int(colors_used.max()) if n else 0,
        pruned_count=int(skipped.sum()),
        config=config,
        runtime_s=runtime,
    )


@dataclass(frozen=True)
class NeighborhoodFeatures:
    """Tabular per-vertex features plus CCDF series of both distributions."""

    rows: list[tuple[int, int, int]]  # (vertex, colors_used, largest_class)
    ccdf_colors: list[tuple[int, float]]
    ccdf_largest: list[tuple[int, float]]
    partial: bool


def _ccdf(values: np.ndarray) -> list[tuple[int, float]]:
    if values.size == 0:
        return [(0, 0.0)]
    top = int(values.max())
    return [(x, float((values > x).mean())) for x in range(top + 1)]


def neighborhood_feature_export(r: NeighborhoodResult) -> NeighborhoodFeatures:
    """Per-vertex (colors, largest class) rows and their CCDFs.

    Skipped vertices are omitted; a pruning-on result therefore only yields
    partial data and triggers a warning.
    """
    partial = bool(r.pruned_count > 0)
    if partial:
        warnings.warn(
            f"{r.pruned_count} neighborhoods were pruned; features are partial "
            "(rerun with pruning off for full per-vertex data)",
            stacklevel=2,
        )
    keep = ~r.skipped
    idx = np.nonzero(keep)[0]
    rows = [(int(v), int(r.colors_used[v]), int(r.largest_class[v])) for v in idx]
    return NeighborhoodFeatures(
        rows=rows,
        ccdf_colors=_ccdf(r.colors_used[keep]),
        ccdf_largest=_ccdf(r.largest_class[keep]),
        partial=partial,
    )
