"""Graph generators shared by the tests. Seeded and deterministic."""

from __future__ import annotations

import itertools

import numpy as np

from chroma import Graph


def gnp_edges(n: int, p: float, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, 1)
    mask = rng.random(iu[0].size) < p
    return np.column_stack([iu[0][mask], iu[1][mask]])


def gnp(n: int, p: float, seed: int) -> Graph:
    # _extra_ids keeps isolated vertices so the graph always has n vertices
    return Graph.from_edges(gnp_edges(n, p, seed), _extra_ids=np.arange(n))


def from_edges(edges, n: int | None = None) -> Graph:
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    extra = np.arange(n) if n is not None else None
    return Graph.from_edges(edges, _extra_ids=extra)


def complete(n: int) -> Graph:
    return from_edges(list(itertools.combinations(range(n), 2)))


def star(leaves: int) -> Graph:
    return from_edges([(0, i) for i in range(1, leaves + 1)])


def path(n: int) -> Graph:
    return from_edges([(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return from_edges([(i, (i + 1) % n) for i in range(n)])


def adjacency_sets(g: Graph) -> list[set[int]]:
    return [set(int(u) for u in g.neighbors(v)) for v in range(g.n)]


def is_connected_edges(n: int, edges) -> bool:
    adj = {i: set() for i in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def connected_graphs_exhaustive(n: int):
    """All connected labeled graphs on n vertices (edge lists)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1]
        if len(edges) >= n - 1 and is_connected_edges(n, edges):
            yield edges


def random_connected(n: int, seed: int, p_lo: float = 0.2, p_hi: float = 0.8) -> np.ndarray:
    """Edges of a random connected labeled graph (rejection sampling)."""
    rng = np.random.default_rng(seed)
    while True:
        p = rng.uniform(p_lo, p_hi)
        iu = np.triu_indices(n, 1)
        mask = rng.random(iu[0].size) < p
        edges = np.column_stack([iu[0][mask], iu[1][mask]])
        if edges.shape[0] >= n - 1 and is_connected_edges(n, edges.tolist()):
            return edges


def powerlaw(n: int, target_m: int, seed: int, exponent: float = 2.3, wmax: float | None = None) -> Graph:
    """Chung-Lu style power-law graph with roughly target_m edges."""
    rng = np.random.default_rng(seed)
    w = (np.arange(1, n + 1, dtype=np.float64)) ** (-1.0 / (exponent - 1.0))
    if wmax is not None:
        w = np.minimum(w, wmax * w[-1] / w[-1])  # no-op guard; weights already relative
        w = np.minimum(w / w.min(), wmax) * w.min()
    p = w / w.sum()
    draws = int(target_m * 1.35)
    u = rng.choice(n, size=draws, p=p)
    v = rng.choice(n, size=draws, p=p)
    keep = u != v
    return Graph.from_edges(np.column_stack([u[keep], v[keep]]), _extra_ids=np.arange(n))
