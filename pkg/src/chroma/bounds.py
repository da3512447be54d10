"""Chromatic-number bounds: heuristic clique lower bound and the upper chain.

The clique finder scans vertices in decreasing core-number order, growing a
clique greedily inside each reduced neighborhood. Workers take dynamic
blocks of start vertices; the best size found so far is shared through a
lock-free hint array read inside the kernel (pruning strength only) and a
lock-protected record of the actual members.
"""

from __future__ import annotations

import json
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .coloring import Coloring, validate_coloring
from .decompose import CoreDecomposition, TrussDecomposition, resolve_threads
from .graph import Graph

__all__ = [
    "CliqueResult",
    "heuristic_clique",
    "BoundReport",
    "bound_report",
    "VERDICT_OPTIMAL",
    "VERDICT_NOT_OPTIMAL",
    "VERDICT_INDETERMINATE",
]

DEFAULT_BLOCK_SIZE = 64

VERDICT_OPTIMAL = "optimal"
VERDICT_NOT_OPTIMAL = "not-optimal"
VERDICT_INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class CliqueResult:
    vertices: np.ndarray
    size: int

    def is_clique(self, g: Graph) -> bool:
        vs = self.vertices
        for i in range(vs.shape[0]):
            for j in range(i + 1, vs.shape[0]):
                if not g.has_edge(int(vs[i]), int(vs[j])):
                    return False
        return True


def heuristic_clique(
    g: Graph,
    core: np.ndarray,
    *,
    threads: int | None = None,
    block_size: int = DEFAULT_BLOCK_SIZE,
    bound: np.ndarray | None = None,
) -> CliqueResult:
    """Greedy clique search over reduced neighborhoods, largest first.

    ``core`` holds K(v); pass ``bound`` to prune with a stronger per-vertex
    bound instead (e.g. max incident triangle-core number). Runs in
    O(m * K(G)). With one worker the result is deterministic; with more,
    the returned set is always a clique but its size may vary run to run.
    """
    n = g.n
    if n == 0:
        return CliqueResult(np.zeros(0, dtype=np.int64), 0)
    core = np.asarray(core, dtype=np.int64)
    b = core if bound is None else np.asarray(bound, dtype=np.int64)
    # unique rank: decreasing bound, ties to higher id
    order = np.lexsort((-np.arange(n, dtype=np.int64), -b)).astype(np.int64)
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n, dtype=np.int64)

    workers = resolve_threads(threads)
    searched = np.zeros(n, dtype=np.uint8)
    shared_best = np.zeros(1, dtype=np.int64)
    dmax = g.max_degree

    best_lock = threading.Lock()
    best: dict = {"size": 0, "members": np.zeros(0, dtype=np.int64)}
    cursor = {"next": 0}
    cursor_lock = threading.Lock()

    def worker():
        cand_buf = np.empty(max(dmax, 1), dtype=np.int64)
        members_buf = np.empty(dmax + 1, dtype=np.int64)
        while True:
            with cursor_lock:
                lo = cursor["next"]
                if lo >= n:
                    return
                cursor["next"] = lo + block_size
            hi = min(n, lo + block_size)
            found = _kernels.clique_block_kernel(
                g.offsets,
                g.nbrs,
                order[lo:hi],
                b,
                rank,
                searched,
                shared_best,
                cand_buf,
                members_buf,
            )
            if found > 0:
                with best_lock:
                    if found > best["size"]:
                        best["size"] = int(found)
                        best["members"] = members_buf[:found].copy()
                        if found > shared_best[0]:
                            shared_best[0] = found

    if workers == 1:
        worker()
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(worker) for _ in range(workers)]
            for f in futs:
                f.result()

    members = np.sort(best["members"])
    return CliqueResult(vertices=members, size=int(best["size"]))


@dataclass(frozen=True)
class BoundReport:
    """Lower/upper bound bundle with per-coloring optimality verdicts."""

    clique: CliqueResult
    lb_clique: int
    ub_truss: int
    ub_core: int
    ub_degree: int
    verdicts: tuple[str, ...]
    gaps: tuple[int, ...]

    def chain_holds(self) -> bool:
        return self.lb_clique <= self.ub_truss <= self.ub_core <= self.ub_degree

    def to_json(self) -> str:
        return json.dumps(
            {
                "clique": [int(v) for v in self.clique.vertices],
                "clique_lb": self.lb_clique,
                "truss_ub": self.ub_truss,
                "core_ub": self.ub_core,
                "degree_ub": self.ub_degree,
                "verdicts": list(self.verdicts),
                "gaps": list(self.gaps),
            },
            sort_keys=True,
        )


def bound_report(
    g: Graph,
    core: CoreDecomposition,
    truss: TrussDecomposition,
    clique: CliqueResult,
    colorings: list[Coloring] | None = None,
) -> BoundReport:
    """Assemble the bound chain and judge each supplied coloring.

    A coloring with k colors is ``optimal`` when k equals the clique lower
    bound; ``not-optimal`` when a strictly smaller valid coloring is in the
    batch or k exceeds the coloring number K(G)+1 (a proper coloring with
    that many colors always exists); ``indeterminate`` otherwise. The
    triangle-core maximum bounds the clique number, not the chromatic
    number (triangle-free graphs can need more than 2 colors), so it never
    drives a verdict.
    """
    colorings = colorings or []
    for c in colorings:
        v = validate_coloring(g, c)
        if not v.valid:
            raise ValueError(f"coloring {c.method!r} fails validation on {v.conflict_edges.size} edges")

    lb = clique.size
    ub_truss = truss.max_truss
    ub_core = core.max_core + 1
    ub_degree = g.max_degree + 1
    chi_upper = ub_core if g.n else 0
    ks = [c.k for c in colorings]
    best_k = min(ks) if ks else None

    verdicts = []
    gaps = []
    for c in colorings:
        if c.k == lb:
            verdicts.append(VERDICT_OPTIMAL)
        elif (best_k is not None and best_k < c.k) or c.k > chi_upper:
            verdicts.append(VERDICT_NOT_OPTIMAL)
        else:
            verdicts.append(VERDICT_INDETERMINATE)
        gaps.append(c.k - lb)
    return BoundReport(
        clique=clique,
        lb_clique=lb,
        ub_truss=ub_truss,
        ub_core=ub_core,
        ub_degree=ub_degree,
        verdicts=tuple(verdicts),
        gaps=tuple(gaps),
    )
