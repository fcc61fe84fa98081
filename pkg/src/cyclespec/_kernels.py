"""Compiled inner loops.

Everything here works on a graph given as ``adj``: a ``uint64`` array with one
neighbourhood bitmask per vertex.  Length sets are bitmasks too, with a length
``L`` stored at bit ``L - 1`` so that cycle lengths up to 64 fit in one word.

The public modules wrap these functions; nothing outside the package should
import them directly.
"""

import numpy as np
from numba import njit

U0 = np.uint64(0)
U1 = np.uint64(1)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ALL = np.uint64(0xFFFFFFFFFFFFFFFF)


@njit(inline="always")
def popcount(x):
    x = x - ((x >> U1) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(inline="always")
def low_index(x):
    return popcount((x & (~x + U1)) - U1)


@njit(inline="always")
def bit(v):
    return U1 << np.uint64(v)


@njit(inline="always")
def full_mask(n):
    if n >= 64:
        return _ALL
    return (U1 << np.uint64(n)) - U1


@njit(inline="always")
def length_window(lo, hi):
    """Mask of lengths ``lo..hi`` inclusive (clamped to 1..64)."""
    if lo < 1:
        lo = 1
    if hi > 64:
        hi = 64
    if hi < lo:
        return U0
    return full_mask(hi) & ~full_mask(lo - 1)


@njit(cache=True)
def reach_within(adj, start, free):
    """Vertices of ``free`` reachable from ``start`` through ``free``."""
    frontier = adj[start] & free
    seen = frontier
    while frontier != U0:
        nxt = U0
        f = frontier
        while f != U0:
            v = low_index(f)
            f &= f - U1
            nxt |= adj[v]
        frontier = nxt & free & ~seen
        seen |= frontier
    return seen


@njit(cache=True)
def component_of(adj, start, allowed):
    comp = bit(start)
    frontier = comp
    while frontier != U0:
        nxt = U0
        f = frontier
        while f != U0:
            v = low_index(f)
            f &= f - U1
            nxt |= adj[v]
        frontier = nxt & allowed & ~comp
        comp |= frontier
    return comp


@njit(cache=True)
def is_connected_on(adj, allowed):
    if allowed == U0:
        return True
    return component_of(adj, low_index(allowed), allowed) == allowed


@njit(cache=True)
def kappa_at_least(adj, n, k):
    """True iff the graph is k-connected (order >= k + 1, no cut of size < k)."""
    if k <= 0:
        return True
    if n < k + 1:
        return False
    allv = full_mask(n)
    if not is_connected_on(adj, allv):
        return False
    # every removal of s < k vertices must leave a connected graph
    for s in range(1, k):
        if n - s < 2:
            break
        sub = full_mask(s)
        limit = bit(n) if n < 64 else U0
        while True:
            if not is_connected_on(adj, allv & ~sub):
                return False
            # Gosper's hack over n-bit masks with s bits set
            c = sub & (~sub + U1)
            r = sub + c
            if r == U0:
                break
            sub = (((r ^ sub) >> np.uint64(2)) // c) | r
            if n < 64 and sub >= limit:
                break
    return True


@njit(cache=True)
def batch_kappa_at_least(rows, n, k):
    out = np.zeros(rows.shape[0], np.bool_)
    for i in range(rows.shape[0]):
        out[i] = kappa_at_least(rows[i], n, k)
    return out


@njit(cache=True)
def bipartite_colors(adj, n):
    """2-colouring by BFS; returns (ok, colour array)."""
    color = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)
    for s in range(n):
        if color[s] >= 0:
            continue
        color[s] = 0
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            v = queue[head]
            head += 1
            nb = adj[v]
            while nb != U0:
                w = low_index(nb)
                nb &= nb - U1
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue[tail] = w
                    tail += 1
                elif color[w] == color[v]:
                    return False, color
    return True, color


@njit(cache=True)
def batch_bipartite(rows, n):
    out = np.zeros(rows.shape[0], np.bool_)
    for i in range(rows.shape[0]):
        ok, _ = bipartite_colors(rows[i], n)
        out[i] = ok
    return out


@njit(cache=True)
def distances(adj, n):
    """All-pairs BFS distances; -1 where unreachable."""
    dist = np.full((n, n), -1, np.int64)
    for s in range(n):
        dist[s, s] = 0
        seen = bit(s)
        frontier = seen
        d = 0
        while frontier != U0:
            d += 1
            nxt = U0
            f = frontier
            while f != U0:
                v = low_index(f)
                f &= f - U1
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= frontier
            f = frontier
            while f != U0:
                v = low_index(f)
                f &= f - U1
                dist[s, v] = d
    return dist


@njit(cache=True)
def girth(adj, n):
    """Shortest cycle length, 0 for forests."""
    best = 0
    parent = np.empty(n, np.int64)
    depth = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    for s in range(n):
        for v in range(n):
            depth[v] = -1
        depth[s] = 0
        parent[s] = -1
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            v = queue[head]
            head += 1
            if best and 2 * depth[v] + 1 >= best:
                break
            nb = adj[v]
            while nb != U0:
                w = low_index(nb)
                nb &= nb - U1
                if depth[w] < 0:
                    depth[w] = depth[v] + 1
                    parent[w] = v
                    queue[tail] = w
                    tail += 1
                elif w != parent[v]:
                    c = depth[v] + depth[w] + 1
                    if best == 0 or c < best:
                        best = c
    return best


# ---------------------------------------------------------------------------
# cycle and path search


@njit(cache=True)
def search_cycles(adj, n, classes, witness):
    """Depth-first cycle search rooted at the least vertex of each cycle.

    ``classes`` is an array of length masks; the search stops as soon as every
    class has been hit.  Returns ``(found_mask, witnesses)`` where
    ``witnesses[L - 1, :L]`` holds a cycle of length ``L`` when ``witness``.
    """
    nclass = classes.shape[0]
    hit = np.zeros(nclass, np.bool_)
    found = U0
    wit = np.full((n if witness else 1, n if witness else 1), -1, np.int64)
    target = U0
    for c in range(nclass):
        target |= classes[c]
    target &= length_window(3, n)
    for c in range(nclass):
        if classes[c] & target == U0:
            hit[c] = True
    if target == U0:
        return found, wit
    path = np.empty(n, np.int64)
    cand = np.empty(n, np.uint64)
    for r in range(n - 2):
        if target & length_window(3, n - r) == U0:
            break
        allowed = full_mask(n) & ~full_mask(r + 1)
        nbr_r = adj[r] & allowed
        if popcount(nbr_r) < 2:
            continue
        path[0] = r
        visited = bit(r)
        cand[0] = nbr_r
        depth = 0
        while depth >= 0:
            if cand[depth] == U0:
                visited &= ~bit(path[depth])
                depth -= 1
                continue
            w = low_index(cand[depth])
            cand[depth] &= cand[depth] - U1
            # enter w at depth + 1; the path then has depth + 1 edges
            p = depth + 1
            path[p] = w
            visited |= bit(w)
            if p >= 2 and adj[w] & bit(r) != U0:
                lb = bit(p)  # length p + 1 lives at bit p
                if lb & target != U0:
                    found |= lb
                    if witness:
                        for t in range(p + 1):
                            wit[p, t] = path[t]
                    target = U0
                    for c in range(nclass):
                        if not hit[c]:
                            if classes[c] & found != U0:
                                hit[c] = True
                            else:
                                target |= classes[c]
                    target &= ~found & length_window(3, n)
                    if target == U0:
                        return found, wit
            free = allowed & ~visited
            reach = reach_within(adj, w, free)
            ext = U0
            if reach & nbr_r != U0:
                ext = target & length_window(p + 2, p + 1 + popcount(reach))
            if ext == U0:
                visited &= ~bit(w)
                continue
            depth = p
            cand[depth] = adj[w] & free
    return found, wit


@njit(cache=True)
def cycle_through(adj, n, root, mask):
    """True iff some cycle through ``root`` has its length in ``mask``."""
    target = mask & length_window(3, n)
    if target == U0:
        return False
    allowed = full_mask(n) & ~bit(root)
    nbr_r = adj[root]
    if popcount(nbr_r) < 2:
        return False
    path = np.empty(n, np.int64)
    cand = np.empty(n, np.uint64)
    path[0] = root
    visited = bit(root)
    cand[0] = nbr_r
    depth = 0
    while depth >= 0:
        if cand[depth] == U0:
            visited &= ~bit(path[depth])
            depth -= 1
            continue
        w = low_index(cand[depth])
        cand[depth] &= cand[depth] - U1
        p = depth + 1
        path[p] = w
        visited |= bit(w)
        if p >= 2 and adj[w] & bit(root) != U0:
            if bit(p) & target != U0:
                return True
        free = allowed & ~visited
        reach = reach_within(adj, w, free)
        if reach & nbr_r == U0 or target & length_window(p + 2, p + 1 + popcount(reach)) == U0:
            visited &= ~bit(w)
            continue
        depth = p
        cand[depth] = adj[w] & free
    return False


@njit(cache=True)
def search_paths(adj, n, x, y, classes, witness):
    """All (x, y)-path lengths, same stopping rule as :func:`search_cycles`.

    ``witnesses[L - 1, :L + 1]`` holds a path of length ``L``.
    """
    nclass = classes.shape[0]
    hit = np.zeros(nclass, np.bool_)
    found = U0
    wit = np.full((n if witness else 1, n if witness else 1), -1, np.int64)
    target = U0
    for c in range(nclass):
        target |= classes[c]
    target &= length_window(1, n - 1)
    if target == U0:
        return found, wit
    path = np.empty(n, np.int64)
    cand = np.empty(n, np.uint64)
    ybit = bit(y)
    nbr_y = adj[y]
    allowed = full_mask(n) & ~bit(x) & ~ybit
    path[0] = x
    if adj[x] & ybit != U0 and target & U1 != U0:
        found |= U1
        if witness:
            wit[0, 0] = x
            wit[0, 1] = y
        target = U0
        for c in range(nclass):
            if not hit[c]:
                if classes[c] & found != U0:
                    hit[c] = True
                else:
                    target |= classes[c]
        target &= ~found & length_window(1, n - 1)
        if target == U0:
            return found, wit
    visited = bit(x)
    cand[0] = adj[x] & allowed
    depth = 0
    while depth >= 0:
        if cand[depth] == U0:
            visited &= ~bit(path[depth])
            depth -= 1
            continue
        w = low_index(cand[depth])
        cand[depth] &= cand[depth] - U1
        p = depth + 1
        path[p] = w
        visited |= bit(w)
        if adj[w] & ybit != U0:
            lb = bit(p)  # path of p + 1 edges
            if lb & target != U0:
                found |= lb
                if witness:
                    for t in range(p + 1):
                        wit[p, t] = path[t]
                    wit[p, p + 1] = y
                target = U0
                for c in range(nclass):
                    if not hit[c]:
                        if classes[c] & found != U0:
                            hit[c] = True
                        else:
                            target |= classes[c]
                target &= ~found & length_window(1, n - 1)
                if target == U0:
                    return found, wit
        free = allowed & ~visited
        reach = reach_within(adj, w, free)
        if reach & nbr_y == U0 or target & length_window(p + 2, p + 1 + popcount(reach)) == U0:
            visited &= ~bit(w)
            continue
        depth = p
        cand[depth] = adj[w] & free
    return found, wit


@njit(cache=True)
def batch_hit_classes(rows, n, classes):
    """Per graph, a bitmask of the classes hit by some cycle length."""
    out = np.zeros(rows.shape[0], np.int64)
    for i in range(rows.shape[0]):
        found, _ = search_cycles(rows[i], n, classes, False)
        m = 0
        for c in range(classes.shape[0]):
            if classes[c] & found != U0:
                m |= 1 << c
        out[i] = m
    return out


# ---------------------------------------------------------------------------
# canonical labelling: individualisation-refinement with automorphism pruning


@njit(cache=True)
def _refine(adj, n, lab, ptn, active, cnt):
    """Refine the ordered partition (lab, ptn) to an equitable one.

    ``ptn[i] != 0`` means position ``i + 1`` is in the same cell as ``i``.
    ``active[i]`` flags the cell starting at ``i`` as a pending splitter.
    The splitter order depends only on cell positions, so the result is
    label-invariant.
    """
    while True:
        i = -1
        for t in range(n):
            if active[t]:
                i = t
                break
        if i < 0:
            return
        active[i] = False
        j = i
        while ptn[j] != 0:
            j += 1
        w = U0
        for t in range(i, j + 1):
            w |= bit(lab[t])
        p = 0
        ncells = 0
        while p < n:
            q = p
            while ptn[q] != 0:
                q += 1
            ncells += 1
            if q > p:
                c0 = popcount(adj[lab[p]] & w)
                same = True
                for t in range(p, q + 1):
                    cnt[t] = popcount(adj[lab[t]] & w)
                    if cnt[t] != c0:
                        same = False
                if not same:
                    for a in range(p + 1, q + 1):
                        kv = cnt[a]
                        lv = lab[a]
                        b = a - 1
                        while b >= p and (cnt[b] > kv or (cnt[b] == kv and lab[b] > lv)):
                            cnt[b + 1] = cnt[b]
                            lab[b + 1] = lab[b]
                            b -= 1
                        cnt[b + 1] = kv
                        lab[b + 1] = lv
                    active[p] = True
                    for a in range(p, q):
                        if cnt[a] == cnt[a + 1]:
                            ptn[a] = 1
                        else:
                            ptn[a] = 0
                            active[a + 1] = True
            p = q + 1
        if ncells == n:
            for t in range(n):
                active[t] = False
            return


@njit(cache=True)
def _uf_find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _certificate(adj, n, lab, pos, cert):
    for i in range(n):
        pos[lab[i]] = i
    for i in range(n):
        row = U0
        nb = adj[lab[i]]
        while nb != U0:
            w = low_index(nb)
            nb &= nb - U1
            row |= bit(pos[w])
        cert[i] = row


@njit(cache=True)
def _compare(a, b, n):
    for i in range(n):
        if a[i] != b[i]:
            return 1 if a[i] > b[i] else -1
    return 0


@njit(cache=True)
def canon(adj, n, colors):
    """Canonical labelling of a vertex-coloured graph.

    Returns ``(lab, cert, gens, ngens)``: ``lab[i]`` is the vertex placed at
    canonical position ``i``; ``cert`` is the relabelled adjacency (the
    canonical form); ``gens[:ngens]`` generate the colour-preserving
    automorphism group.
    """
    gens = np.empty((max(4, n), max(n, 1)), np.int64)
    ng = 0
    if n == 0:
        return np.empty(0, np.int64), np.empty(0, np.uint64), gens, 0
    LAB = np.empty((n + 1, n), np.int64)
    PTN = np.zeros((n + 1, n), np.int64)
    active = np.zeros(n, np.bool_)
    cnt = np.empty(n, np.int64)
    order = np.argsort(colors, kind="mergesort")
    for i in range(n):
        LAB[0, i] = order[i]
    for i in range(n - 1):
        PTN[0, i] = 1 if colors[order[i]] == colors[order[i + 1]] else 0
    PTN[0, n - 1] = 0
    active[0] = True
    for i in range(1, n):
        if PTN[0, i - 1] == 0:
            active[i] = True
    _refine(adj, n, LAB[0], PTN[0], active, cnt)

    pos = np.empty(n, np.int64)
    cur_cert = np.empty(n, np.uint64)
    first_cert = np.empty(n, np.uint64)
    best_cert = np.empty(n, np.uint64)
    first_lab = np.empty(n, np.int64)
    best_lab = np.empty(n, np.int64)
    IND = np.full(n + 1, -1, np.int64)
    FIRST_IND = np.full(n + 1, -1, np.int64)
    BEST_IND = np.full(n + 1, -1, np.int64)
    TS = np.zeros(n + 1, np.int64)
    TE = np.zeros(n + 1, np.int64)
    CI = np.zeros(n + 1, np.int64)
    EXPL = np.zeros((n + 1, n), np.bool_)
    ORB = np.empty((n + 1, n), np.int64)
    ORBN = np.full(n + 1, -1, np.int64)

    def_target = -1
    for i in range(n):
        if PTN[0, i] != 0:
            def_target = i
            break
    if def_target < 0:
        _certificate(adj, n, LAB[0], pos, best_cert)
        for i in range(n):
            best_lab[i] = LAB[0, i]
        return best_lab, best_cert, gens, 0

    TS[0] = def_target
    e = def_target
    while PTN[0, e] != 0:
        e += 1
    TE[0] = e
    have_first = False
    d = 0
    while d >= 0:
        if TS[d] + CI[d] > TE[d]:
            d -= 1
            continue
        w = LAB[d, TS[d] + CI[d]]
        CI[d] += 1
        if CI[d] > 1 and ng > 0:
            if ORBN[d] != ng:
                for v in range(n):
                    ORB[d, v] = v
                for g in range(ng):
                    fixes = True
                    for t in range(d):
                        if gens[g, IND[t]] != IND[t]:
                            fixes = False
                            break
                    if fixes:
                        for v in range(n):
                            a = _uf_find(ORB[d], v)
                            b = _uf_find(ORB[d], gens[g, v])
                            if a != b:
                                if a < b:
                                    ORB[d, b] = a
                                else:
                                    ORB[d, a] = b
                ORBN[d] = ng
            rw = _uf_find(ORB[d], w)
            skip = False
            for t in range(TS[d], TE[d] + 1):
                u = LAB[d, t]
                if EXPL[d, u] and _uf_find(ORB[d], u) == rw:
                    skip = True
                    break
            if skip:
                continue
        EXPL[d, w] = True
        IND[d] = w
        for t in range(d + 1, n + 1):
            IND[t] = -1
        # individualise w
        for i in range(n):
            LAB[d + 1, i] = LAB[d, i]
            PTN[d + 1, i] = PTN[d, i]
            active[i] = False
        s = TS[d]
        for t in range(TS[d], TE[d] + 1):
            if LAB[d + 1, t] == w:
                LAB[d + 1, t] = LAB[d + 1, s]
                LAB[d + 1, s] = w
                break
        PTN[d + 1, s] = 0
        active[s] = True
        _refine(adj, n, LAB[d + 1], PTN[d + 1], active, cnt)
        tgt = -1
        for i in range(n):
            if PTN[d + 1, i] != 0:
                tgt = i
                break
        if tgt >= 0:
            d += 1
            TS[d] = tgt
            e = tgt
            while PTN[d, e] != 0:
                e += 1
            TE[d] = e
            CI[d] = 0
            for v in range(n):
                EXPL[d, v] = False
            ORBN[d] = -1
            continue
        # leaf
        _certificate(adj, n, LAB[d + 1], pos, cur_cert)
        if not have_first:
            have_first = True
            for i in range(n):
                first_cert[i] = cur_cert[i]
                best_cert[i] = cur_cert[i]
                first_lab[i] = LAB[d + 1, i]
                best_lab[i] = LAB[d + 1, i]
            for t in range(n + 1):
                FIRST_IND[t] = IND[t]
                BEST_IND[t] = IND[t]
            continue
        ref_lab = first_lab
        ref_ind = FIRST_IND
        found_aut = False
        if _compare(cur_cert, first_cert, n) == 0:
            found_aut = True
        else:
            cmpb = _compare(cur_cert, best_cert, n)
            if cmpb == 0:
                found_aut = True
                ref_lab = best_lab
                ref_ind = BEST_IND
            elif cmpb > 0:
                for i in range(n):
                    best_cert[i] = cur_cert[i]
                    best_lab[i] = LAB[d + 1, i]
                for t in range(n + 1):
                    BEST_IND[t] = IND[t]
        if found_aut:
            if ng == gens.shape[0]:
                bigger = np.empty((2 * ng, n), np.int64)
                bigger[:ng] = gens[:ng]
                gens = bigger
            for i in range(n):
                gens[ng, ref_lab[i]] = LAB[d + 1, i]
            ng += 1
            c = 0
            while c <= d and IND[c] == ref_ind[c]:
                c += 1
            d = c
    return best_lab, best_cert, gens, ng


@njit(cache=True)
def orbits_from_gens(gens, ng, n):
    parent = np.arange(n)
    for g in range(ng):
        for v in range(n):
            a = _uf_find(parent, v)
            b = _uf_find(parent, gens[g, v])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    for v in range(n):
        parent[v] = _uf_find(parent, v)
    return parent


# ---------------------------------------------------------------------------
# orderly generation by canonical augmentation


@njit(cache=True)
def _permute_mask(g, s, m):
    out = U0
    while s != U0:
        v = low_index(s)
        s &= s - U1
        out |= bit(g[v])
    return out


@njit(cache=True)
def expand(padj, m, nfinal, mindeg, maxdeg, girth_min, forbid, bip, min_edges, max_edges):
    """All canonical one-vertex extensions of the parent ``padj`` (m vertices).

    A child is kept iff the new vertex is the canonical deletion vertex: a
    vertex of minimum degree, then maximum neighbour-degree sum, then the
    Aut-orbit holding the largest canonical position.  Rows of the returned
    array are the children's adjacency masks.
    """
    c = m + 1
    out = np.empty((64, c), np.uint64)
    nout = 0
    req = mindeg - (nfinal - c)
    degp = np.empty(m, np.int64)
    ep = 0
    must = U0
    ban = U0
    for v in range(m):
        degp[v] = popcount(padj[v])
        ep += degp[v]
        if degp[v] < req - 1:
            return out[:0]
        if degp[v] < req:
            must |= bit(v)
        if degp[v] >= maxdeg:
            ban |= bit(v)
    ep //= 2
    if must & ban != U0:
        return out[:0]
    free = full_mask(m) & ~must & ~ban

    # Aut(parent) orbits on neighbour sets
    zeros = np.zeros(m, np.int64)
    _, _, pgens, png = canon(padj, m, zeros)
    nsub = 1 << m
    rep = np.empty(0, np.int64)
    if png > 0:
        rep = np.arange(nsub)
        for g in range(png):
            for s in range(nsub):
                t = np.int64(_permute_mask(pgens[g], np.uint64(s), m))
                a = _uf_find(rep, s)
                b = _uf_find(rep, t)
                if a != b:
                    if a < b:
                        rep[b] = a
                    else:
                        rep[a] = b

    dist = np.empty((0, 0), np.int64)
    if girth_min > 3:
        dist = distances(padj, m)
    pcolor = np.empty(0, np.int64)
    pcomp = np.empty(0, np.int64)
    if bip:
        ok, pcolor = bipartite_colors(padj, m)
        if not ok:
            return out[:0]
        pcomp = np.full(m, -1, np.int64)
        for v in range(m):
            if pcomp[v] < 0:
                cm = component_of(padj, v, full_mask(m))
                while cm != U0:
                    u = low_index(cm)
                    cm &= cm - U1
                    pcomp[u] = v

    child = np.empty(c, np.uint64)
    degc = np.empty(c, np.int64)
    zc = np.zeros(c, np.int64)
    nf = nfinal * (nfinal - 1)
    t = U0
    while True:
        s = t | must
        d = popcount(s)
        ok = d >= req and d <= maxdeg
        if ok:
            e = ep + d
            if e > max_edges or e * nf < min_edges * c * (c - 1):
                ok = False
        if ok:
            for v in range(m):
                if s & bit(v) != U0:
                    if degp[v] + 1 < d:
                        ok = False
                        break
                elif degp[v] < d:
                    ok = False
                    break
        if ok and png > 0:
            # keep only the least member of each Aut(parent) orbit
            si = np.int64(s)
            if _uf_find(rep, si) != si:
                ok = False
        if ok and girth_min > 3:
            a_s = s
            while a_s != U0 and ok:
                a = low_index(a_s)
                a_s &= a_s - U1
                b_s = a_s
                while b_s != U0:
                    b = low_index(b_s)
                    b_s &= b_s - U1
                    if dist[a, b] >= 0 and dist[a, b] < girth_min - 2:
                        ok = False
                        break
        if ok and bip:
            a_s = s
            while a_s != U0 and ok:
                a = low_index(a_s)
                a_s &= a_s - U1
                b_s = a_s
                while b_s != U0:
                    b = low_index(b_s)
                    b_s &= b_s - U1
                    if pcomp[a] == pcomp[b] and pcolor[a] != pcolor[b]:
                        ok = False
                        break
        if ok:
            for v in range(m):
                child[v] = padj[v]
                if s & bit(v) != U0:
                    child[v] |= bit(m)
            child[m] = s
            if forbid != U0 and cycle_through(child, c, m, forbid):
                ok = False
        if ok:
            # canonical deletion test
            for v in range(c):
                degc[v] = popcount(child[v])
            nmin = 0
            for v in range(c):
                if degc[v] == d:
                    nmin += 1
            if nmin > 1:
                best2 = -1
                for v in range(c):
                    if degc[v] == d:
                        sm = 0
                        nb = child[v]
                        while nb != U0:
                            x = low_index(nb)
                            nb &= nb - U1
                            sm += degc[x]
                        zc[v] = sm
                        if sm > best2:
                            best2 = sm
                if zc[m] != best2:
                    ok = False
                else:
                    ntie = 0
                    for v in range(c):
                        if degc[v] == d and zc[v] == best2:
                            ntie += 1
                    if ntie > 1:
                        colors = np.zeros(c, np.int64)
                        lab, _, cg, cng = canon(child, c, colors)
                        orb = orbits_from_gens(cg, cng, c)
                        star = -1
                        for i in range(c - 1, -1, -1):
                            v = lab[i]
                            if degc[v] == d and zc[v] == best2:
                                star = v
                                break
                        if orb[star] != orb[m]:
                            ok = False
        if ok:
            if nout == out.shape[0]:
                bigger = np.empty((2 * nout, c), np.uint64)
                bigger[:nout] = out[:nout]
                out = bigger
            for v in range(c):
                out[nout, v] = child[v]
            nout += 1
        if t == free:
            break
        t = (t - free) & free
    return out[:nout]


@njit(cache=True)
def batch_found(rows, n, classes):
    """Per graph, the mask of cycle lengths found before every class was hit."""
    out = np.zeros(rows.shape[0], np.uint64)
    for i in range(rows.shape[0]):
        found, _ = search_cycles(rows[i], n, classes, False)
        out[i] = found
    return out
