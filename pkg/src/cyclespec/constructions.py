"""Named graphs and gadgets."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .graph import Graph, GraphError, build_graph


@dataclass(frozen=True)
class MarkedGraph:
    graph: Graph
    marks: dict[str, int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        vals = list(self.marks.values())
        if len(set(vals)) != len(vals) or any(not 0 <= v < self.graph.n for v in vals):
            raise GraphError(f"bad marks {self.marks}")


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return build_graph(n, combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(s: int, t: int, minus_edge: bool = False) -> Graph:
    """Sides ``0..s-1`` and ``s..s+t-1``; ``minus_edge`` drops the edge (0, s)."""
    if s < 1 or t < 1:
        raise GraphError("sides must be nonempty")
    edges = [(a, s + b) for a in range(s) for b in range(t)]
    if minus_edge:
        edges.remove((0, s))
    return build_graph(s + t, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return build_graph(10, outer + inner + spokes)


def kneser_petersen() -> Graph:
    """Petersen as the Kneser graph on 2-subsets of a 5-set."""
    pairs = list(combinations(range(5), 2))
    edges = [(i, j) for i, j in combinations(range(10), 2) if not set(pairs[i]) & set(pairs[j])]
    return build_graph(10, edges)


def hypo_petersen(split: Iterable[int]) -> Graph:
    """Pentagram x_1..x_5 with outer vertices; positions in ``split`` (from 1..5)
    get two private outer neighbours y_i, z_i, the rest a single y_i = z_i.
    Outer edges join z_i to y_{i+1} cyclically.
    """
    sp = set(split)
    if not sp <= {1, 2, 3, 4, 5}:
        raise GraphError(f"split must be a subset of 1..5, got {sorted(sp)}")
    x = {i: i - 1 for i in range(1, 6)}
    nxt = 5
    y, z = {}, {}
    for i in range(1, 6):
        y[i] = nxt
        nxt += 1
        if i in sp:
            z[i] = nxt
            nxt += 1
        else:
            z[i] = y[i]
    edges = set()
    star = [1, 3, 5, 2, 4]
    for a, b in zip(star, star[1:] + star[:1]):
        edges.add((x[a], x[b]))
    for i in range(1, 6):
        edges.add((x[i], y[i]))
        if z[i] != y[i]:
            edges.add((x[i], z[i]))
        edges.add((z[i], y[i % 5 + 1]))
    return build_graph(nxt, sorted(tuple(sorted(e)) for e in edges))


def f_graph(r: int) -> MarkedGraph:
    """Hubs x1, x2 joined by one path of length 2 and ``r`` paths of length 3."""
    if r < 1:
        raise GraphError("r must be at least 1")
    x1, x2, mid = 0, 1, 2
    edges = [(x1, mid), (mid, x2)]
    for j in range(r):
        a, b = 3 + 2 * j, 4 + 2 * j
        edges += [(x1, a), (a, b), (b, x2)]
    return MarkedGraph(build_graph(2 * r + 3, edges), {"x1": x1, "x2": x2, "x": mid})


def l_construction(i: int) -> MarkedGraph:
    """The gadget L_i(x, y): a 4-cycle x-u-y-v with chord uv, with a pendant
    edge at x (i = 2), at y (i = 3) or both (i = 4)."""
    if i not in (1, 2, 3, 4):
        raise GraphError("i must be in 1..4")
    # core on a, u, b, v; a and b are the core attachment points
    a, u, b, v = 0, 1, 2, 3
    edges = [(a, u), (u, b), (b, v), (v, a), (u, v)]
    n = 4
    x, y = a, b
    if i in (2, 4):
        x = n
        edges.append((a, x))
        n += 1
    if i in (3, 4):
        y = n
        edges.append((b, y))
        n += 1
    return MarkedGraph(build_graph(n, edges), {"x": x, "y": y})


def theta_graph(a: int, b: int, c: int) -> MarkedGraph:
    if not (1 <= a <= b <= c):
        raise GraphError("need 1 <= a <= b <= c")
    if b < 2:
        raise GraphError("two paths of length 1 would form a multi-edge")
    h1, h2 = 0, 1
    edges = []
    n = 2
    for length in (a, b, c):
        prev = h1
        for _ in range(length - 1):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, h2))
    return MarkedGraph(build_graph(n, edges), {"hub1": h1, "hub2": h2})


def combine_count(s: int, diff_a: int, t: int, diff_b: int) -> int:
    """Guaranteed number of admissible cycles when an AP of ``s`` internal
    paths (difference ``diff_a``) is concatenated with an AP of ``t``
    external paths (difference ``diff_b``).  A lower bound, not an exact
    count for any particular graph."""
    if s < 1 or t < 1:
        raise ValueError("s and t must be positive")
    if diff_a not in (1, 2) or diff_b not in (1, 2):
        raise ValueError("differences must be 1 or 2")
    # a single-term progression has no genuine difference
    if diff_a == diff_b or s == 1 or t == 1:
        return s + t - 1
    if (diff_a, diff_b) == (2, 1):
        return 2 * s + t - 2
    return s + 2 * t - 2


def bipartite_minus_family(max_side: int) -> list[tuple[int, int, bool]]:
    """Members of the family used by the odd-path lemma:
    K_{s,t} with min(s,t) >= 2, and K_{s,t}^- with min >= 2 and max >= 3."""
    out = []
    for s in range(2, max_side + 1):
        for t in range(s, max_side + 1):
            out.append((s, t, False))
            if t >= 3:
                out.append((s, t, True))
    return out
