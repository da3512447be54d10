import numpy as np
import pytest

import chroma
from chroma.ordering import CATALOG, ScoreContext, canonical_method, local_rank, static_scores

import _gen
import _oracles


@pytest.fixture(scope="module")
def sample():
    g = _gen.gnp(26, 0.3, 42)
    return g, ScoreContext(g)


@pytest.mark.parametrize("method", CATALOG)
def test_every_method_is_a_permutation(sample, method):
    g, ctx = sample
    o = chroma.compute_ordering(g, method, ctx=ctx, seed=3)
    assert o.is_permutation()
    assert o.method == method


def test_unknown_method_rejected(sample):
    g, ctx = sample
    with pytest.raises(ValueError, match="unknown ordering method"):
        chroma.compute_ordering(g, "nope", ctx=ctx)


def test_slo_alias():
    assert canonical_method("slo") == "kcore"
    assert canonical_method("SLO") == "kcore"


def test_deg_star_center_first():
    g = _gen.star(4)
    o = chroma.compute_ordering(g, "deg")
    assert o.sequence[0] == 0


def test_default_tiebreak_higher_id_first():
    # star: all leaves tie on degree; higher id precedes lower id
    g = _gen.star(4)
    o = chroma.compute_ordering(g, "deg")
    assert list(o.sequence) == [0, 4, 3, 2, 1]


def test_low_id_tiebreak_selectable():
    g = _gen.star(4)
    o = chroma.compute_ordering(g, "deg", tiebreak="low-id")
    assert list(o.sequence) == [0, 1, 2, 3, 4]


def test_property_tiebreak():
    # two degree-3 vertices; the one in a triangle wins under tri tie-break
    g = _gen.from_edges([(0, 1), (0, 2), (0, 3), (4, 5), (4, 6), (4, 7), (5, 6)])
    o = chroma.compute_ordering(g, "deg", tiebreak="property:tri")
    assert list(o.sequence).index(4) < list(o.sequence).index(0)


def test_direction_reversal_static(sample):
    g, ctx = sample
    a = chroma.compute_ordering(g, "deg", ctx=ctx, direction="max-to-min")
    b = chroma.compute_ordering(g, "deg", ctx=ctx, direction="min-to-max")
    deg = g.degrees
    pa = {int(v): i for i, v in enumerate(a.sequence)}
    pb = {int(v): i for i, v in enumerate(b.sequence)}
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if deg[u] != deg[v]:
                assert (pa[u] < pa[v]) == (pb[u] > pb[v])


def test_slo_coloring_guarantee():
    g = _gen.gnp(30, 0.2, 7)
    ctx = ScoreContext(g)
    o = chroma.compute_ordering(g, "kcore", ctx=ctx)
    k = chroma.greedy_color(g, o).k
    assert k <= ctx.core_decomposition.max_core + 1


def test_dist_two_deg_matches_bfs_oracle():
    g = _gen.gnp(50, 0.1, 13)
    adj = _gen.adjacency_sets(g)
    scores = static_scores("dist-two-deg", ScoreContext(g))
    for v in range(g.n):
        assert scores[v] == _oracles.bfs2_count(adj, v)


def test_rand_reproducible(sample):
    g, ctx = sample
    a = chroma.compute_ordering(g, "rand", ctx=ctx, seed=99)
    b = chroma.compute_ordering(g, "rand", ctx=ctx, seed=99)
    assert np.array_equal(a.sequence, b.sequence)
    assert a.seed == 99
    c = chroma.compute_ordering(g, "rand", ctx=ctx)  # entropy seed is recorded
    assert c.seed is not None


def test_dlf_matches_manual_simulation():
    g = _gen.gnp(18, 0.35, 5)
    adj = _gen.adjacency_sets(g)
    o = chroma.compute_ordering(g, "dlf")
    remaining = set(range(g.n))
    fwd = {v: len(adj[v]) for v in range(g.n)}
    for v in o.sequence:
        v = int(v)
        assert fwd[v] == max(fwd[u] for u in remaining)
        remaining.discard(v)
        for u in adj[v]:
            if u in remaining:
                fwd[u] -= 1


def test_ido_back_degree_semantics():
    g = _gen.gnp(18, 0.35, 6)
    adj = _gen.adjacency_sets(g)
    o = chroma.compute_ordering(g, "ido")
    colored = set()
    back = {v: 0 for v in range(g.n)}
    for v in o.sequence:
        v = int(v)
        assert back[v] == max(back[u] for u in range(g.n) if u not in colored)
        colored.add(v)
        for u in adj[v]:
            if u not in colored:
                back[u] += 1


# --- dynamic triangle ordering -------------------------------------------


def test_it_on_triangle_free_graph():
    g = _gen.star(6)
    eo = chroma.dynamic_triangle_ordering(g, None, "it")
    assert sorted(eo.sequence) == list(range(g.m))
    assert set(eo.peel_values) == {0}


def test_slt_on_k4():
    g = _gen.complete(4)
    eo = chroma.dynamic_triangle_ordering(g, chroma.edge_triangles(g), "slt")
    assert len(eo) == 6
    assert set(eo.peel_values) == {2}  # all peel from support 2


@pytest.mark.parametrize("seed", range(8))
def test_slt_reproduces_truss(seed):
    g = _gen.gnp(15, 0.3, 300 + seed)
    etri = chroma.edge_triangles(g)
    eo = chroma.dynamic_triangle_ordering(g, etri, "slt")
    truss = chroma.triangle_core_decompose(g, etri)
    assert np.array_equal(eo.peel_values + 2, truss.truss)


def test_lft_is_permutation():
    g = _gen.gnp(15, 0.4, 77)
    eo = chroma.dynamic_triangle_ordering(g, chroma.edge_triangles(g), "lft")
    assert sorted(eo.sequence) == list(range(g.m))


def test_slt_requires_counts():
    g = _gen.complete(3)
    with pytest.raises(ValueError, match="requires edge triangle counts"):
        chroma.dynamic_triangle_ordering(g, None, "slt")


# --- edge order to vertex order -------------------------------------------


def test_edge_to_vertex_single_edge_plus_isolated():
    g = _gen.from_edges([(0, 1)], n=3)
    eo = chroma.dynamic_triangle_ordering(g, None, "it")
    vo = chroma.edge_order_to_vertex_order(eo, g)
    assert list(vo.sequence) == [0, 1, 2]


def test_edge_to_vertex_k3_first_edge_endpoints_first():
    g = _gen.complete(3)
    eo = chroma.EdgeOrdering(np.arange(3), "it", np.zeros(3, dtype=np.int64))
    vo = chroma.edge_order_to_vertex_order(eo, g)
    assert list(vo.sequence[:2]) == [int(g.edge_u[0]), int(g.edge_v[0])]


@pytest.mark.parametrize("variant", ["it", "slt", "lft"])
def test_edge_to_vertex_always_permutation(variant):
    g = _gen.gnp(12, 0.3, 55)
    etri = None if variant == "it" else chroma.edge_triangles(g)
    eo = chroma.dynamic_triangle_ordering(g, etri, variant)
    vo = chroma.edge_order_to_vertex_order(eo, g)
    assert vo.is_permutation()


def test_local_rank_restriction_matches_global_order(sample):
    g, ctx = sample
    rank = local_rank(g, "tri-kcore", ctx)
    order = chroma.compute_ordering(g, "tri-kcore", ctx=ctx)
    subset = np.array([3, 7, 11, 20, 25])
    by_rank = subset[np.argsort(rank[subset])]
    pos = {int(v): i for i, v in enumerate(order.sequence)}
    by_global = sorted(subset, key=lambda v: pos[int(v)])
    assert list(by_rank) == list(by_global)


def test_local_rank_rejects_dynamic(sample):
    g, ctx = sample
    with pytest.raises(ValueError, match="static"):
        local_rank(g, "dlf", ctx)
