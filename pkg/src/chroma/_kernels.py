"""Compiled kernels shared by the decomposition, coloring, and search modules.

Everything here operates on plain numpy arrays (CSR offsets/neighbors plus
edge-id arrays) so the hot loops run compiled. Kernels marked ``nogil`` are
invoked from worker threads; the only cross-thread state they touch is a
one-element shared bound array whose races are benign (it is a pruning hint,
never the source of a returned result).
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

NOT_A_VERTEX = np.int64(-1)

# ---------------------------------------------------------------------------
# Triangle counting
# ---------------------------------------------------------------------------


@njit(cache=True, parallel=True)
def vertex_triangles_kernel(offsets, nbrs, n, n_chunks):
    """Per-vertex triangle counts via neighbor marking.

    For each vertex v the neighborhood is stamped, then every wedge
    v-u-w is tested against the stamp; each incident triangle is seen
    twice, so the raw tally is halved. Chunked so each parallel worker
    reuses one stamp array; writes are per-vertex, hence deterministic.
    """
    tr = np.zeros(n, dtype=np.int64)
    chunk = (n + n_chunks - 1) // n_chunks
    for c in prange(n_chunks):
        lo = c * chunk
        hi = min(n, lo + chunk)
        if lo >= hi:
            continue
        stamp = np.full(n, NOT_A_VERTEX, dtype=np.int64)
        for v in range(lo, hi):
            for i in range(offsets[v], offsets[v + 1]):
                stamp[nbrs[i]] = v
            cnt = 0
            for i in range(offsets[v], offsets[v + 1]):
                u = nbrs[i]
                for j in range(offsets[u], offsets[u + 1]):
                    w = nbrs[j]
                    if w == v:
                        continue
                    if stamp[w] == v:
                        cnt += 1
            tr[v] = cnt // 2
    return tr


@njit(cache=True, parallel=True)
def edge_triangles_kernel(offsets, nbrs, edge_u, edge_v, n, n_chunks):
    """Per-edge triangle counts: tr(u,v) = |N(u) ∩ N(v)| via stamping."""
    m = edge_u.shape[0]
    tr = np.zeros(m, dtype=np.int64)
    chunk = (m + n_chunks - 1) // n_chunks
    for c in prange(n_chunks):
        lo = c * chunk
        hi = min(m, lo + chunk)
        if lo >= hi:
            continue
        stamp = np.full(n, np.int64(-1), dtype=np.int64)
        for e in range(lo, hi):
            u = edge_u[e]
            v = edge_v[e]
            for i in range(offsets[v], offsets[v + 1]):
                stamp[nbrs[i]] = e
            cnt = 0
            for i in range(offsets[u], offsets[u + 1]):
                w = nbrs[i]
                if w == v:
                    continue
                if stamp[w] == e:
                    cnt += 1
            tr[e] = cnt
    return tr


@njit(cache=True, parallel=True)
def dist2_kernel(offsets, nbrs, n):
    """Unique vertices within distance 1 or 2 of each vertex."""
    out = np.zeros(n, dtype=np.int64)
    n_chunks = 64
    chunk = (n + n_chunks - 1) // n_chunks
    for c in prange(n_chunks):
        lo = c * chunk
        hi = min(n, lo + chunk)
        if lo >= hi:
            continue
        stamp = np.full(n, NOT_A_VERTEX, dtype=np.int64)
        for v in range(lo, hi):
            stamp[v] = v
            cnt = 0
            for i in range(offsets[v], offsets[v + 1]):
                u = nbrs[i]
                if stamp[u] != v:
                    stamp[u] = v
                    cnt += 1
            for i in range(offsets[v], offsets[v + 1]):
                u = nbrs[i]
                for j in range(offsets[u], offsets[u + 1]):
                    w = nbrs[j]
                    if stamp[w] != v:
                        stamp[w] = v
                        cnt += 1
            out[v] = cnt
    return out


# ---------------------------------------------------------------------------
# Peeling decompositions
# ---------------------------------------------------------------------------


@njit(cache=True)
def kcore_peel_kernel(offsets, nbrs, n):
    """True smallest-last peel: always remove a minimum-residual-degree vertex.

    Returns (core numbers, peel order); K(v) is the running maximum of the
    removal-time degrees. FIFO linked-list buckets, filled in ascending id
    order, keep tie handling deterministic.
    """
    core = np.zeros(n, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    if n == 0:
        return core, order
    deg = np.empty(n, dtype=np.int64)
    md = 0
    for v in range(n):
        deg[v] = offsets[v + 1] - offsets[v]
        if deg[v] > md:
            md = deg[v]
    head = np.full(md + 2, -1, dtype=np.int64)
    tail = np.full(md + 2, -1, dtype=np.int64)
    prv = np.full(n, -1, dtype=np.int64)
    nxt = np.full(n, -1, dtype=np.int64)
    for v in range(n):
        d = deg[v]
        t = tail[d]
        prv[v] = t
        if t == -1:
            head[d] = v
        else:
            nxt[t] = v
        tail[d] = v
    alive = np.ones(n, dtype=np.uint8)
    ptr = 0
    level = 0
    for i in range(n):
        while head[ptr] == -1:
            ptr += 1
        v = head[ptr]
        # unlink v
        head[ptr] = nxt[v]
        if nxt[v] == -1:
            tail[ptr] = -1
        else:
            prv[nxt[v]] = -1
        nxt[v] = -1
        alive[v] = 0
        if deg[v] > level:
            level = deg[v]
        core[v] = level
        order[i] = v
        for j in range(offsets[v], offsets[v + 1]):
            u = nbrs[j]
            if alive[u] == 1:
                # unlink u from bucket deg[u]
                d = deg[u]
                p = prv[u]
                nx = nxt[u]
                if p == -1:
                    head[d] = nx
                else:
                    nxt[p] = nx
                if nx == -1:
                    tail[d] = p
                else:
                    prv[nx] = p
                # append u to tail of bucket d-1
                deg[u] = d - 1
                t = tail[d - 1]
                prv[u] = t
                nxt[u] = -1
                if t == -1:
                    head[d - 1] = u
                else:
                    nxt[t] = u
                tail[d - 1] = u
                if d - 1 < ptr:
                    ptr = d - 1
    return core, order


@njit(cache=True)
def truss_peel_kernel(offsets, nbrs, arc_eids, edge_u, edge_v, sup0, n):
    """Min-support edge peeling with support clamped at the running level.

    ``sup0`` holds initial per-edge triangle counts. Returns the stable
    per-edge support level; the triangle-core number is that level plus 2.
    """
    m = edge_u.shape[0]
    level = np.zeros(m, dtype=np.int64)
    if m == 0:
        return level
    sup = sup0.astype(np.int64).copy()
    ms = 0
    for e in range(m):
        if sup[e] > ms:
            ms = sup[e]
    bin_start = np.zeros(ms + 2, dtype=np.int64)
    for e in range(m):
        bin_start[sup[e] + 1] += 1
    for d in range(1, ms + 2):
        bin_start[d] += bin_start[d - 1]
    pos = np.empty(m, dtype=np.int64)
    edge = np.empty(m, dtype=np.int64)
    fill = bin_start[:-1].copy()
    for e in range(m):
        pos[e] = fill[sup[e]]
        edge[pos[e]] = e
        fill[sup[e]] += 1
    start = bin_start[:-1].copy()
    removed = np.zeros(m, dtype=np.uint8)
    # stamp[w] = processing edge id + 1 when (u, w) survives; val stores that arc's edge id
    stamp = np.zeros(n, dtype=np.int64)
    val = np.empty(n, dtype=np.int64)

    def _move_down(f, sup, pos, edge, start):
        df = sup[f]
        pf = pos[f]
        pw = start[df]
        w2 = edge[pw]
        if f != w2:
            edge[pf] = w2
            edge[pw] = f
            pos[f] = pw
            pos[w2] = pf
        start[df] += 1
        sup[f] = df - 1

    cur_level = 0
    for i in range(m):
        e = edge[i]
        if sup[e] > cur_level:
            cur_level = sup[e]
        level[e] = cur_level
        removed[e] = 1
        u = edge_u[e]
        v = edge_v[e]
        if offsets[u + 1] - offsets[u] > offsets[v + 1] - offsets[v]:
            u, v = v, u
        tag = e + 1
        for j in range(offsets[u], offsets[u + 1]):
            w = nbrs[j]
            f = arc_eids[j]
            if removed[f] == 0:
                stamp[w] = tag
                val[w] = f
        for j in range(offsets[v], offsets[v + 1]):
            w = nbrs[j]
            g = arc_eids[j]
            if removed[g] == 0 and stamp[w] == tag:
                f = val[w]
                if sup[f] > cur_level:
                    _move_down(f, sup, pos, edge, start)
                if sup[g] > cur_level:
                    _move_down(g, sup, pos, edge, start)
    return level


# ---------------------------------------------------------------------------
# Greedy coloring (global)
# ---------------------------------------------------------------------------


@njit(cache=True)
def greedy_color_kernel(offsets, nbrs, order, dmax):
    """First-fit greedy over ``order``; returns (colors, k).

    The used array is stamped with the current vertex id, so it is
    initialized once to a non-vertex sentinel and never reset.
    """
    n = order.shape[0]
    colors = np.zeros(n, dtype=np.int64)
    used = np.full(dmax + 2, NOT_A_VERTEX, dtype=np.int64)
    kmax = 0
    for t in range(n):
        v = order[t]
        for j in range(offsets[v], offsets[v + 1]):
            used[colors[nbrs[j]]] = v
        k = 1
        while used[k] == v:
            k += 1
        colors[v] = k
        if k > kmax:
            kmax = k
    return colors, kmax


@njit(cache=True)
def greedy_recolor_kernel(offsets, nbrs, order, dmax):
    """Greedy with single-swap repair when a brand-new color class opens.

    When vertex v is about to open color k, classes below k holding exactly
    one conflicting neighbor w are scanned in ascending order; if w can move
    to some class c with color(w) < c < k unused by N(w), the swap retires
    class k. Returns (colors, k).
    """
    n = order.shape[0]
    colors = np.zeros(n, dtype=np.int64)
    used = np.full(dmax + 3, NOT_A_VERTEX, dtype=np.int64)
    conflicts = np.zeros(dmax + 3, dtype=np.int64)
    confv = np.zeros(dmax + 3, dtype=np.int64)
    mark = np.full(dmax + 3, np.int64(-1), dtype=np.int64)
    call = 0
    kmax = 0
    for t in range(n):
        v = order[t]
        for j in range(offsets[v], offsets[v + 1]):
            used[colors[nbrs[j]]] = v
        k = 1
        while used[k] == v:
            k += 1
        colors[v] = k
        if k > kmax:
            repaired = False
            for i in range(1, k):
                conflicts[i] = 0
            for j in range(offsets[v], offsets[v + 1]):
                c = colors[nbrs[j]]
                if c < k:
                    conflicts[c] += 1
                    confv[c] = nbrs[j]
            for i in range(1, k):
                if conflicts[i] == 1:
                    w = confv[i]
                    call += 1
                    for j in range(offsets[w], offsets[w + 1]):
                        mark[colors[nbrs[j]]] = call
                    c = i + 1
                    while c < k and mark[c] == call:
                        c += 1
                    if c < k:
                        colors[v] = i
                        colors[w] = c
                        repaired = True
                        break
            if repaired:
                k -= 1
            kmax = k
    return colors, kmax


# ---------------------------------------------------------------------------
# Heuristic clique search
# ---------------------------------------------------------------------------


@njit(cache=True)
def _is_adjacent(offsets, nbrs, u, v):
    lo = offsets[u]
    hi = offsets[u + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        w = nbrs[mid]
        if w == v:
            return True
        if w < v:
            lo = mid + 1
        else:
            hi = mid
    return False


@njit(cache=True, nogil=True)
def clique_block_kernel(
    offsets,
    nbrs,
    verts,
    bound,
    rank,
    searched,
    shared_best,
    cand_buf,
    best_members,
):
    """Greedy clique growth over a block of start vertices.

    ``bound`` is the per-vertex pruning bound (core number by default),
    ``rank`` a precomputed unique rank ordering candidates by decreasing
    bound. ``shared_best`` (int64[1]) is read for pruning and raised when a
    larger clique is found; ``searched`` stamps finished start vertices so
    later searches exclude them. Returns the size of the best clique found
    in this block (members left in ``best_members``), or 0.
    """
    found = 0
    for bi in range(verts.shape[0]):
        v = verts[bi]
        best = shared_best[0]
        if found > best:
            best = found
        if bound[v] < best:
            searched[v] = 1
            continue
        # candidates: neighbors surviving the bound and searched filters
        cnt = 0
        for j in range(offsets[v], offsets[v + 1]):
            u = nbrs[j]
            if searched[u] == 0 and bound[u] >= best:
                cand_buf[cnt] = u
                cnt += 1
        if cnt + 1 <= best:
            searched[v] = 1
            continue
        # order candidates by decreasing bound (unique rank, stable)
        keys = np.empty(cnt, dtype=np.int64)
        for i in range(cnt):
            keys[i] = rank[cand_buf[i]]
        sel = np.argsort(keys)
        size = 1
        clique = np.empty(cnt + 1, dtype=np.int64)
        clique[0] = v
        for ii in range(cnt):
            if size + (cnt - ii) <= best:
                break
            u = cand_buf[sel[ii]]
            if bound[u] < best:
                continue
            ok = True
            for ci in range(1, size):
                if not _is_adjacent(offsets, nbrs, u, clique[ci]):
                    ok = False
                    break
            if ok:
                clique[size] = u
                size += 1
        if size > found and size > shared_best[0]:
            found = size
            for i in range(size):
                best_members[i] = clique[i]
            if size > shared_best[0]:
                shared_best[0] = size
        searched[v] = 1
    return found


# ---------------------------------------------------------------------------
# Neighborhood coloring
# ---------------------------------------------------------------------------

VARIANT_BASIC = 0
VARIANT_RECOLOR = 1
SEARCH_VERTEX = 0
SEARCH_COLOR = 1


@njit(cache=True, nogil=True)
def _class_push(head, nxt, c, idx):
    nxt[idx] = head[c]
    head[c] = idx


@njit(cache=True, nogil=True)
def _class_remove(head, nxt, c, idx):
    q = head[c]
    if q == idx:
        head[c] = nxt[idx]
        return
    while q != -1:
        if nxt[q] == idx:
            nxt[q] = nxt[idx]
            return
        q = nxt[q]


@njit(cache=True, nogil=True)
def neighborhood_block_kernel(
    offsets,
    nbrs,
    verts,
    rank,
    bound,
    lb,
    pruning,
    drop_center,
    variant,
    search,
    shared_max,
    pos_tag,
    pos_idx,
    members,
    loc_color,
    used,
    conflicts,
    confv,
    mark,
    head,
    nxt,
    colors_out,
    largest_out,
    skipped_out,
):
    """Color the closed neighborhood of every vertex in ``verts``.

    Per-worker scratch: ``pos_tag``/``pos_idx`` (length n, membership
    stamps), the rest sized max-degree + 3. With ``pruning`` nonzero,
    vertices are skipped when their bound cannot exceed the shared running
    maximum (or the clique lower bound ``lb``), and low-bound neighbors are
    excluded from the induced subgraph. Results are written per vertex, so
    pruning-off runs are deterministic for any worker count.
    """
    # stamps restart per call, so per-worker stamped scratch is cleared here
    for i in range(used.shape[0]):
        used[i] = -1
    for i in range(mark.shape[0]):
        mark[i] = -1
    call = 0
    for bi in range(verts.shape[0]):
        v = verts[bi]
        if pruning != 0 and (bound[v] < lb or bound[v] <= shared_max[0]):
            skipped_out[v] = 1
            colors_out[v] = 0
            largest_out[v] = 0
            continue
        # gather members: v plus (filtered) neighbors
        cnt = 0
        if drop_center == 0:
            members[cnt] = v
            cnt += 1
        for j in range(offsets[v], offsets[v + 1]):
            w = nbrs[j]
            if pruning != 0 and (bound[w] < lb or bound[w] <= shared_max[0]):
                continue
            members[cnt] = w
            cnt += 1
        if cnt == 0:
            skipped_out[v] = 0
            colors_out[v] = 0
            largest_out[v] = 0
            continue
        # local order: ascending precomputed rank (score direction baked in)
        keys = np.empty(cnt, dtype=np.int64)
        for i in range(cnt):
            keys[i] = rank[members[i]]
        sel = np.argsort(keys)
        tag = v + 1
        for i in range(cnt):
            u = members[sel[i]]
            pos_tag[u] = tag
            pos_idx[u] = i
            loc_color[i] = 0
        ordered = np.empty(cnt, dtype=np.int64)
        for i in range(cnt):
            ordered[i] = members[sel[i]]

        kmax = 0
        for t in range(cnt):
            u = ordered[t]
            if search == SEARCH_VERTEX:
                call += 1
                for j in range(offsets[u], offsets[u + 1]):
                    w = nbrs[j]
                    if pos_tag[w] == tag:
                        c = loc_color[pos_idx[w]]
                        if c > 0:
                            used[c] = call
                k = 1
                while used[k] == call:
                    k += 1
            else:
                # color-centric: stamp N(u), then scan class member lists
                call += 1
                for j in range(offsets[u], offsets[u + 1]):
                    w = nbrs[j]
                    if pos_tag[w] == tag:
                        mark[pos_idx[w]] = call
                k = 1
                while k <= kmax:
                    conflict = False
                    q = head[k]
                    while q != -1:
                        if mark[q] == call:
                            conflict = True
                            break
                        q = nxt[q]
                    if not conflict:
                        break
                    k += 1
            if variant == VARIANT_RECOLOR and k > kmax:
                for i in range(1, k):
                    conflicts[i] = 0
                for j in range(offsets[u], offsets[u + 1]):
                    w = nbrs[j]
                    if pos_tag[w] == tag:
                        c = loc_color[pos_idx[w]]
                        if 0 < c < k:
                            conflicts[c] += 1
                            confv[c] = pos_idx[w]
                repaired = False
                for i in range(1, k):
                    if conflicts[i] == 1:
                        wi = confv[i]
                        wg = ordered[wi]
                        call += 1
                        for j in range(offsets[wg], offsets[wg + 1]):
                            x = nbrs[j]
                            if pos_tag[x] == tag:
                                c = loc_color[pos_idx[x]]
                                if c > 0:
                                    mark[cnt + c] = call
                        c = i + 1
                        while c < k and mark[cnt + c] == call:
                            c += 1
                        if c < k:
                            if search == SEARCH_COLOR:
                                _class_remove(head, nxt, i, wi)
                                _class_push(head, nxt, c, wi)
                                _class_push(head, nxt, i, t)
                            loc_color[t] = i
                            loc_color[wi] = c
                            repaired = True
                            break
                if repaired:
                    k = kmax
                else:
                    loc_color[t] = k
                    if search == SEARCH_COLOR:
                        _class_push(head, nxt, k, t)
                    kmax = k
            else:
                loc_color[t] = k
                if search == SEARCH_COLOR:
                    _class_push(head, nxt, k, t)
                if k > kmax:
                    kmax = k
        # class sizes -> largest independent-set class in this neighborhood
        largest = 0
        for c in range(1, kmax + 1):
            conflicts[c] = 0
        for t in range(cnt):
            conflicts[loc_color[t]] += 1
        for c in range(1, kmax + 1):
            if conflicts[c] > largest:
                largest = conflicts[c]
        colors_out[v] = kmax
        largest_out[v] = largest
        skipped_out[v] = 0
        if kmax > shared_max[0]:
            shared_max[0] = kmax
        if search == SEARCH_COLOR:
            for c in range(1, kmax + 2):
                head[c] = -1
    return 0
