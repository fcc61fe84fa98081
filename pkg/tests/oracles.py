"""Slow, obviously-correct reference implementations used by the tests.

Nothing here touches the package's search kernels; graphs are plain edge
sets and every answer comes from brute force.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

import numpy as np


def edge_set(g) -> set[tuple[int, int]]:
    return {(u, v) for u, v in g.edges()}


def adjacency_sets(n, edges):
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


# cycles -----------------------------------------------------------------------


def _subset_has_hamiltonian_cycle(adj, verts) -> bool:
    """Held-Karp over ``verts``: is there a cycle through exactly these vertices?"""
    verts = list(verts)
    m = len(verts)
    if m < 3:
        return False
    idx = {v: i for i, v in enumerate(verts)}
    start = verts[0]
    # reach[mask] = set of end vertices of paths from start covering mask
    reach = {1: {0}}
    full = (1 << m) - 1
    for mask in range(1, full + 1):
        if not mask & 1 or mask not in reach:
            continue
        for end in reach[mask]:
            for w in adj[verts[end]]:
                j = idx.get(w)
                if j is None or mask >> j & 1:
                    continue
                reach.setdefault(mask | 1 << j, set()).add(j)
    return any(start in adj[verts[e]] for e in reach.get(full, ()) if e != 0)


def brute_cycle_lengths(n, edges) -> set[int]:
    """Lengths L such that some L-subset of vertices carries a Hamiltonian cycle."""
    adj = adjacency_sets(n, edges)
    out = set()
    for L in range(3, n + 1):
        for verts in combinations(range(n), L):
            if all(len(adj[v] & set(verts)) >= 2 for v in verts) and _subset_has_hamiltonian_cycle(adj, verts):
                out.add(L)
                break
    return out


def brute_path_lengths(n, edges, x, y) -> set[int]:
    adj = adjacency_sets(n, edges)
    out = set()

    def walk(v, seen, length):
        if v == y:
            out.add(length)
            return
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                walk(w, seen, length + 1)
                seen.remove(w)

    walk(x, {x}, 0)
    return out


@lru_cache(maxsize=None)
def complete_graph_cycles(n: int):
    """Every cycle of K_n as (edge bitmask over the C(n,2) pairs, length)."""
    pos = {}
    for i, (u, v) in enumerate(combinations(range(n), 2)):
        pos[(u, v)] = i
    masks, lengths = [], []
    for L in range(3, n + 1):
        for verts in combinations(range(n), L):
            first, rest = verts[0], verts[1:]
            for perm in permutations(rest):
                if perm[0] > perm[-1]:
                    continue  # each undirected cycle once
                seq = (first,) + perm
                m = 0
                for a, b in zip(seq, seq[1:] + seq[:1]):
                    m |= 1 << pos[(min(a, b), max(a, b))]
                masks.append(m)
                lengths.append(L)
    return np.array(masks, dtype=np.uint64), np.array(lengths, dtype=np.int64), pos


def edge_bitmask(n, edges) -> int:
    _, _, pos = complete_graph_cycles(n)
    m = 0
    for u, v in edges:
        m |= 1 << pos[(min(u, v), max(u, v))]
    return m


def cycle_length_masks(n: int, graph_masks: np.ndarray) -> np.ndarray:
    """For edge bitmasks of n-vertex graphs, the cycle-length bitmask (bit L-1) of each."""
    cyc, lens, _ = complete_graph_cycles(n)
    out = np.zeros(len(graph_masks), dtype=np.uint64)
    if len(cyc) == 0:
        return out
    for start in range(0, len(graph_masks), 512):
        g = graph_masks[start : start + 512]
        contained = (cyc[None, :] & ~g[:, None]) == 0
        acc = np.zeros(len(g), dtype=np.uint64)
        for L in np.unique(lens):
            has = contained[:, lens == L].any(axis=1)
            acc |= np.where(has, np.uint64(1) << np.uint64(L - 1), np.uint64(0))
        out[start : start + 512] = acc
    return out


def mask_to_set(mask: int) -> set[int]:
    return {i + 1 for i in range(64) if int(mask) >> i & 1}


# connectivity -------------------------------------------------------------------


def _connected(n, adj, removed) -> bool:
    left = [v for v in range(n) if v not in removed]
    if not left:
        return True
    seen = {left[0]}
    stack = [left[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(left)


def brute_connectivity(n, edges) -> int:
    """Largest k with order >= k+1 such that deleting any < k vertices leaves it connected."""
    adj = adjacency_sets(n, edges)
    best = 0
    for k in range(1, n):
        if all(_connected(n, adj, set(s)) for size in range(k) for s in combinations(range(n), size)):
            best = k
        else:
            break
    return best


def disjoint_paths_count(n, edges, s, t) -> int:
    """Maximum number of internally disjoint s-t paths by exhaustive search."""
    adj = adjacency_sets(n, edges)
    paths = []

    def walk(v, seen, path):
        if v == t:
            paths.append(frozenset(path[1:-1]))
            return
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                path.append(w)
                walk(w, seen, path)
                path.pop()
                seen.remove(w)

    walk(s, {s}, [s])
    # the direct edge has no interior and is compatible with everything
    direct = frozenset() in paths
    inner = sorted({p for p in paths if p}, key=len)
    best = 0

    def pick(i, used, count):
        nonlocal best
        best = max(best, count)
        if count + (len(inner) - i) <= best:
            return
        for j in range(i, len(inner)):
            if not inner[j] & used:
                pick(j + 1, used | inner[j], count + 1)

    pick(0, frozenset(), 0)
    return best + (1 if direct else 0)


# isomorphism classes ------------------------------------------------------------


def labelled_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for m in range(1 << len(pairs)):
        yield [pairs[i] for i in range(len(pairs)) if m >> i & 1]


def brute_canonical(n, edges) -> tuple:
    """Lexicographically least sorted edge list over all n! relabellings."""
    best = None
    for perm in permutations(range(n)):
        e = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges))
        if best is None or e < best:
            best = e
    return best


def brute_class_count(n: int, keep=lambda n, edges: True) -> int:
    return len({brute_canonical(n, e) for e in labelled_graphs(n) if keep(n, e)})


def automorphism_count(n, edges) -> int:
    es = {(min(u, v), max(u, v)) for u, v in edges}
    count = 0
    for perm in permutations(range(n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in es for u, v in es):
            count += 1
    return count
