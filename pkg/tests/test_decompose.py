import numpy as np
import pytest

import chroma

import _gen
import _oracles


def test_vertex_triangles_fixtures(karate):
    assert list(chroma.vertex_triangles(_gen.complete(3))) == [1, 1, 1]
    assert list(chroma.vertex_triangles(_gen.star(5))) == [0] * 6
    assert chroma.vertex_triangles(karate).sum() == 135


def test_edge_triangles_fixtures():
    k4 = _gen.complete(4)
    assert list(chroma.edge_triangles(k4)) == [2] * 6
    tree = _gen.path(6)
    assert list(chroma.edge_triangles(tree)) == [0] * 5


def test_edge_triangles_vs_intersection_oracle():
    g = _gen.gnp(10, 0.5, 1)
    A = _oracles.adjacency_matrix(g.n, zip(g.edge_u, g.edge_v))
    etri = chroma.edge_triangles(g)
    for e in range(g.m):
        assert etri[e] == _oracles.edge_common_neighbors(A, int(g.edge_u[e]), int(g.edge_v[e]))


@pytest.mark.parametrize("seed", range(12))
def test_triangle_incidence_consistency(seed):
    g = _gen.gnp(24, 0.35, seed)
    tri = chroma.vertex_triangles(g)
    etri = chroma.edge_triangles(g)
    A = _oracles.adjacency_matrix(g.n, zip(g.edge_u, g.edge_v))
    t = _oracles.triangle_count(A)
    assert tri.sum() == etri.sum() == 3 * t


def test_kcore_fixtures(karate):
    k5 = _gen.complete(5)
    core = chroma.kcore_decompose(k5)
    assert core.max_core == 4 and set(core.core) == {4}
    forest = _gen.path(7)
    assert chroma.kcore_decompose(forest).max_core <= 1
    assert chroma.kcore_decompose(karate).max_core + 1 == 5


def test_truss_fixtures(karate):
    k4 = _gen.complete(4)
    t = chroma.triangle_core_decompose(k4, chroma.edge_triangles(k4))
    assert set(t.truss) == {4}
    k3 = _gen.complete(3)
    t3 = chroma.triangle_core_decompose(k3, chroma.edge_triangles(k3))
    assert set(t3.truss) == {3}
    tk = chroma.triangle_core_decompose(karate, chroma.edge_triangles(karate))
    assert tk.max_truss == 5
    # isolated edge convention
    e1 = _gen.from_edges([(0, 1)])
    assert chroma.triangle_core_decompose(e1, chroma.edge_triangles(e1)).truss[0] == 2


@pytest.mark.parametrize("seed", range(10))
def test_fixpoint_oracles_small(seed):
    g = _gen.gnp(10, 0.45, 100 + seed)
    adj = _gen.adjacency_sets(g)
    core = chroma.kcore_decompose(g)
    assert np.array_equal(core.core, _oracles.kcore_fixpoint(adj))
    truss = chroma.triangle_core_decompose(g, chroma.edge_triangles(g))
    oracle = _oracles.truss_fixpoint(g.n, zip(g.edge_u, g.edge_v))
    for e in range(g.m):
        assert truss.truss[e] == oracle[(int(g.edge_u[e]), int(g.edge_v[e]))]


@pytest.mark.parametrize("seed", range(15))
def test_bound_chain_and_pointwise_invariants(seed):
    g = _gen.gnp(30, 0.3, 200 + seed)
    deg = g.degrees
    tri = chroma.vertex_triangles(g)
    etri = chroma.edge_triangles(g)
    core = chroma.kcore_decompose(g)
    truss = chroma.triangle_core_decompose(g, etri)
    assert np.all(core.core <= deg)
    for e in range(g.m):
        u, v = int(g.edge_u[e]), int(g.edge_v[e])
        assert truss.truss[e] <= min(core.core[u], core.core[v]) + 1
        assert truss.truss[e] - 2 <= etri[e]
    assert truss.max_truss <= core.max_core + 1 <= g.max_degree + 1


def test_peel_order_is_valid_permutation():
    g = _gen.gnp(40, 0.2, 9)
    core = chroma.kcore_decompose(g)
    assert sorted(core.peel_order) == list(range(g.n))
    # peel removes a minimum-degree vertex of the residual graph each step
    alive = set(range(g.n))
    adj = _gen.adjacency_sets(g)
    for v in core.peel_order:
        degs = {u: len(adj[u] & alive) for u in alive}
        assert degs[int(v)] == min(degs.values())
        alive.discard(int(v))


def test_counting_thread_independence():
    g = _gen.gnp(50, 0.3, 4)
    t1 = chroma.vertex_triangles(g, threads=1)
    t4 = chroma.vertex_triangles(g, threads=4)
    assert np.array_equal(t1, t4)
    e1 = chroma.edge_triangles(g, threads=1)
    e4 = chroma.edge_triangles(g, threads=4)
    assert np.array_equal(e1, e4)


def test_isolated_vertices_kept():
    g = _gen.from_edges([(0, 1)], n=4)
    assert g.n == 4
    core = chroma.kcore_decompose(g)
    assert list(core.core) == [1, 1, 0, 0]
