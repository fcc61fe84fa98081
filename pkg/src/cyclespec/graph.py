"""Immutable simple graphs on bit-packed adjacency, plus structural predicates."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K

MAX_VERTICES = 64


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """A simple graph on vertices ``0..n-1``.

    ``adjacency[v]`` is an integer bitmask of the neighbours of ``v``.
    """

    n: int
    adjacency: tuple[int, ...]
    edge_count: int = field(default=-1, compare=False)

    def __post_init__(self):
        if self.edge_count < 0:
            object.__setattr__(self, "edge_count", sum(a.bit_count() for a in self.adjacency) // 2)

    @cached_property
    def rows(self) -> np.ndarray:
        arr = np.array(self.adjacency, dtype=np.uint64) if self.n else np.zeros(0, np.uint64)
        arr.setflags(write=False)
        return arr

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adjacency[u]) if u < v]

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adjacency]

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v or self.has_edge(u, v):
            raise GraphError(f"cannot add edge ({u}, {v})")
        adj = list(self.adjacency)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        adj = []
        for v in vs:
            m = 0
            for w in _bits(self.adjacency[v]):
                if w in index:
                    m |= 1 << index[w]
            adj.append(m)
        return Graph(len(vs), tuple(adj))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            m = 0
            for w in _bits(self.adjacency[v]):
                m |= 1 << perm[w]
            adj[perm[v]] = m
        return Graph(self.n, tuple(adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def bits(mask: int) -> list[int]:
    return _bits(mask)


def build_graph(n: int, edges: Iterable[tuple[int, int]], max_vertices: int = MAX_VERTICES) -> Graph:
    if n < 0 or n > max_vertices:
        raise GraphError(f"vertex count {n} outside 0..{max_vertices}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop at {u}")
        if adj[u] >> v & 1:
            raise GraphError(f"duplicate edge ({u}, {v})")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def from_rows(rows) -> Graph:
    return Graph(len(rows), tuple(int(r) for r in rows))


def min_degree(g: Graph) -> int:
    if g.n < 1:
        raise GraphError("min_degree of the empty graph")
    return min(g.degrees())


@dataclass(frozen=True)
class Bipartition:
    side_a: frozenset[int]
    side_b: frozenset[int]


def bipartition(g: Graph) -> Bipartition | None:
    if g.n == 0:
        return Bipartition(frozenset(), frozenset())
    ok, color = K.bipartite_colors(g.rows, g.n)
    if not ok:
        return None
    a = frozenset(v for v in range(g.n) if color[v] == 0)
    return Bipartition(a, frozenset(range(g.n)) - a)


def is_connected(g: Graph) -> bool:
    return g.n == 0 or bool(K.is_connected_on(g.rows, np.uint64((1 << g.n) - 1)))


def is_k_connected(g: Graph, k: int) -> bool:
    return bool(K.kappa_at_least(g.rows, g.n, k))


def local_connectivity(g: Graph, s: int, t: int) -> int:
    """Maximum number of internally disjoint (s, t)-paths, via unit-capacity max-flow.

    Every vertex other than s and t is split into an in/out pair joined by an
    arc of capacity one; adjacent s and t count their edge as one path.
    """
    n = g.n
    # node 2v = v_in, 2v+1 = v_out
    cap: dict[tuple[int, int], int] = {}
    out: list[list[int]] = [[] for _ in range(2 * n)]

    def arc(a, b, c):
        if (a, b) not in cap:
            out[a].append(b)
            out[b].append(a)
            cap.setdefault((b, a), 0)
            cap[(a, b)] = 0
        cap[(a, b)] += c

    big = n
    for v in range(n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in g.edges():
        if {u, v} == {s, t}:
            arc(2 * s + 1, 2 * t, 1)
            continue
        arc(2 * u + 1, 2 * v, big)
        arc(2 * v + 1, 2 * u, big)
    src, dst = 2 * s + 1, 2 * t
    flow = 0
    while True:
        prev = {src: src}
        queue = [src]
        for a in queue:
            if a == dst:
                break
            for b in out[a]:
                if b not in prev and cap[(a, b)] > 0:
                    prev[b] = a
                    queue.append(b)
        if dst not in prev:
            return flow
        b = dst
        while b != src:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1


def vertex_connectivity(g: Graph) -> int:
    """Largest k such that g is k-connected; K_n gives n-1, disconnected gives 0."""
    n = g.n
    if n < 2:
        raise GraphError("vertex_connectivity needs n >= 2")
    if not is_connected(g):
        return 0
    best = n - 1
    for s, t in combinations(range(n), 2):
        if not g.has_edge(s, t):
            best = min(best, local_connectivity(g, s, t))
    return best


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: list[frozenset[int]]
    cut_vertices: frozenset[int]
    end_blocks: list[int]
    is_block_chain: bool


def block_decomposition(g: Graph) -> BlockDecomposition:
    if g.n == 0 or not is_connected(g):
        raise GraphError("block_decomposition needs a connected graph")
    blocks = _biconnected(g)
    if g.n == 1:
        blocks = [frozenset([0])]
    count: dict[int, int] = {}
    for b in blocks:
        for v in b:
            count[v] = count.get(v, 0) + 1
    cuts = frozenset(v for v, c in count.items() if c >= 2)
    if len(blocks) == 1:
        ends = [0]
    else:
        ends = [i for i, b in enumerate(blocks) if len(b & cuts) == 1]
    return BlockDecomposition(blocks, cuts, ends, len(ends) == 2)


def _biconnected(g: Graph) -> list[frozenset[int]]:
    """Hopcroft-Tarjan with an explicit stack; blocks sorted by their vertex lists."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    timer = 0
    blocks: list[frozenset[int]] = []
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    comp = set()
                    while True:
                        a, b = edge_stack.pop()
                        comp.update((a, b))
                        if (a, b) == (parent, v):
                            break
                    blocks.append(frozenset(comp))
    blocks.sort(key=sorted)
    return blocks


def girth(g: Graph) -> int | None:
    if g.n == 0:
        return None
    value = int(K.girth(g.rows, g.n))
    return value or None


def contract_set(g: Graph, w: Iterable[int]) -> Graph:
    """Merge ``w`` into one vertex placed last; others keep their relative order."""
    ws = set(w)
    if not ws or any(not 0 <= v < g.n for v in ws):
        raise GraphError("contraction set must be a nonempty set of vertices")
    wmask = sum(1 << v for v in ws)
    if not K.is_connected_on(g.rows, np.uint64(wmask)):
        raise GraphError("contraction set does not induce a connected subgraph")
    keep = [v for v in range(g.n) if v not in ws]
    index = {v: i for i, v in enumerate(keep)}
    merged = len(keep)
    edges = set()
    for u, v in g.edges():
        a = merged if u in ws else index[u]
        b = merged if v in ws else index[v]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return build_graph(merged + 1, sorted(edges))


# canonical forms


def canonical_labeling(g: Graph, colors: Sequence[int] | None = None) -> list[int]:
    """``lab[i]`` is the vertex at canonical position ``i``."""
    if g.n == 0:
        return []
    col = np.zeros(g.n, np.int64) if colors is None else np.asarray(colors, dtype=np.int64)
    lab, _, _, _ = K.canon(g.rows, g.n, col)
    return [int(v) for v in lab]


def automorphism_generators(g: Graph, colors: Sequence[int] | None = None) -> list[list[int]]:
    if g.n == 0:
        return []
    col = np.zeros(g.n, np.int64) if colors is None else np.asarray(colors, dtype=np.int64)
    _, _, gens, ng = K.canon(g.rows, g.n, col)
    return [[int(x) for x in gens[i]] for i in range(ng)]


def canonical_code(g: Graph, colors: Sequence[int] | None = None) -> bytes:
    """Bytes that agree for two graphs exactly when they are isomorphic
    (colour-preserving isomorphism when ``colors`` is given)."""
    if g.n == 0:
        return b"\x00"
    col = np.zeros(g.n, np.int64) if colors is None else np.asarray(colors, dtype=np.int64)
    _, cert, _, _ = K.canon(g.rows, g.n, col)
    return _code_bytes(g.n, cert, None if colors is None else sorted(int(c) for c in colors))


def _code_bytes(n: int, cert, colors: list[int] | None) -> bytes:
    width = (n + 7) // 8
    body = b"".join(int(r).to_bytes(width, "little") for r in cert)
    head = bytes([n])
    if colors is not None:
        head += b"c" + b"".join(c.to_bytes(2, "little", signed=True) for c in colors)
    return head + body


def code_from_rows(rows: np.ndarray, n: int) -> bytes:
    _, cert, _, _ = K.canon(rows, n, np.zeros(n, np.int64))
    return _code_bytes(n, cert, None)


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and a.edge_count == b.edge_count and canonical_code(a) == canonical_code(b)
