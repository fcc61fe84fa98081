"""Isomorph-free generation of small graphs by canonical augmentation."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator

import numpy as np

from . import _kernels as K
from .graph import Graph, GraphError, from_rows

ENUM_CAP = 12


@dataclass(frozen=True)
class GraphFilter:
    """Hypothesis side of an enumeration.

    Every rule except ``connectivity_at_least``, ``min_order`` and
    ``bipartite == "forbid"`` is hereditary under deleting a vertex of
    minimum degree, so it is also used to prune partial graphs.
    """

    min_degree: int = 0
    max_degree: int | None = None
    connectivity_at_least: int = 0
    bipartite: str = "any"  # "require" | "forbid" | "any"
    min_order: int = 0
    girth_at_least: int = 0
    min_edges: int = 0
    max_edges: int | None = None
    forbidden_lengths: int = 0  # length mask, bit L-1 for length L

    def __post_init__(self):
        if self.bipartite not in ("require", "forbid", "any"):
            raise ValueError(f"bipartite must be require/forbid/any, not {self.bipartite!r}")
        if min(self.min_degree, self.connectivity_at_least, self.min_order,
               self.girth_at_least, self.min_edges) < 0:
            raise ValueError("filter bounds must be non-negative")


CONNECTED = GraphFilter(connectivity_at_least=1)


@dataclass(frozen=True)
class Cursor:
    """Position in a partitioned stream: the next split-level node to visit."""

    split_level: int
    next_index: int

    def as_dict(self) -> dict:
        return {"split_level": self.split_level, "next_index": self.next_index}


def split_level_for(n: int) -> int:
    return max(1, min(n - 1, n - 3 if n >= 8 else n - 2))


def _params(n: int, f: GraphFilter):
    maxdeg = n - 1 if f.max_degree is None else min(f.max_degree, n - 1)
    max_edges = n * (n - 1) // 2 if f.max_edges is None else f.max_edges
    return (
        np.int64(f.min_degree),
        np.int64(maxdeg),
        np.int64(f.girth_at_least),
        np.uint64(f.forbidden_lengths),
        f.bipartite == "require",
        np.int64(f.min_edges),
        np.int64(max_edges),
    )


def iter_batches(
    n: int,
    f: GraphFilter = GraphFilter(),
    part: int = 0,
    parts: int = 1,
    start: int = 0,
    override_cap: bool = False,
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(split_index, rows)`` where ``rows`` stacks accepted ``n``-vertex
    graphs (one adjacency row per vertex).

    The split level is numbered in generation order; partition ``part`` of
    ``parts`` handles the indices congruent to ``part``, starting at ``start``.
    """
    if n > ENUM_CAP and not override_cap:
        raise GraphError(f"n={n} exceeds the enumeration cap {ENUM_CAP}")
    if n < 1:
        return
    if n < f.min_order:
        return
    mindeg, maxdeg, gmin, forbid, bip, emin, emax = _params(n, f)
    if mindeg > n - 1:
        return
    root = np.zeros(1, np.uint64)
    split = split_level_for(n)
    if n == 1:
        rows = root.reshape(1, 1)
        kept = _final_filter(rows, n, f)
        if kept.shape[0] and start == 0 and part == 0:
            yield 0, kept
        return
    counter = [0]

    def walk(adj: np.ndarray, m: int, tag: int) -> Iterator[tuple[int, np.ndarray]]:
        if m == split:
            tag = counter[0]
            counter[0] += 1
            if tag % parts != part or tag < start:
                return
        kids = K.expand(adj, m, n, mindeg, maxdeg, gmin, forbid, bip, emin, emax)
        if m + 1 == n:
            kept = _final_filter(kids, n, f)
            if kept.shape[0]:
                yield tag, kept
            return
        for i in range(kids.shape[0]):
            yield from walk(kids[i], m + 1, tag)

    yield from walk(root, 1, 0)


def _final_filter(rows: np.ndarray, n: int, f: GraphFilter) -> np.ndarray:
    if rows.shape[0] == 0:
        return rows
    keep = np.ones(rows.shape[0], np.bool_)
    if n < f.min_order:
        keep[:] = False
    if n == 1:
        # the root never passes through the kernel's edge bounds
        keep &= f.min_edges == 0
    if f.connectivity_at_least > 0:
        keep &= K.batch_kappa_at_least(rows, n, f.connectivity_at_least)
    if f.bipartite == "forbid":
        keep &= ~K.batch_bipartite(rows, n)
    return rows[keep]


def filter_rows(rows: np.ndarray, n: int, f: GraphFilter) -> np.ndarray:
    """Apply every rule of ``f`` from scratch (no reliance on generation pruning)."""
    if rows.shape[0] == 0:
        return rows
    bits = np.unpackbits(rows[:, :n].view(np.uint8).reshape(rows.shape[0], n, 8), axis=2, bitorder="little")
    deg = bits.sum(axis=2)
    edges = deg.sum(axis=1) // 2
    keep = deg.min(axis=1) >= f.min_degree
    if f.max_degree is not None:
        keep &= deg.max(axis=1) <= f.max_degree
    keep &= edges >= f.min_edges
    if f.max_edges is not None:
        keep &= edges <= f.max_edges
    if f.girth_at_least:
        gs = np.array([K.girth(r, n) for r in rows])
        keep &= (gs == 0) | (gs >= f.girth_at_least)
    if f.forbidden_lengths:
        cls = np.array([f.forbidden_lengths], dtype=np.uint64)
        keep &= (K.batch_found(rows, n, cls) & cls[0]) == 0
    if f.bipartite == "require":
        keep &= K.batch_bipartite(rows, n)
    return _final_filter(rows[keep], n, f)


def external_batches(
    path: str,
    n: int,
    f: GraphFilter = GraphFilter(),
    part: int = 0,
    parts: int = 1,
    start: int = 0,
    chunk: int = 1000,
) -> Iterator[tuple[int, np.ndarray]]:
    """Batches like :func:`iter_batches` but read from a graph6 file.

    Only graphs of order ``n`` are used; chunk ``i`` of them (``chunk``
    graphs each) belongs to partition ``i % parts``.  Duplicates in the file
    are not removed.
    """
    from .graph6 import parse_graph6

    def emit(tag, buf):
        rows = np.zeros((len(buf), n), np.uint64)
        for i, g in enumerate(buf):
            rows[i, :n] = g.adjacency
        return tag, filter_rows(rows, n, f)

    buf: list[Graph] = []
    tag = 0
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if ord(line[0]) - 63 != n and not line.startswith(">>"):
                continue
            g = parse_graph6(line)
            if g.n != n:
                continue
            buf.append(g)
            if len(buf) == chunk:
                if tag % parts == part and tag >= start:
                    yield emit(tag, buf)
                buf = []
                tag += 1
    if buf and tag % parts == part and tag >= start:
        yield emit(tag, buf)


def enumerate_graphs(n: int, f: GraphFilter = GraphFilter(), override_cap: bool = False) -> Iterator[Graph]:
    """One representative per isomorphism class of n-vertex graphs passing ``f``."""
    for _, rows in iter_batches(n, f, override_cap=override_cap):
        for r in rows:
            yield from_rows(r)


def count_graphs(n: int, f: GraphFilter = GraphFilter()) -> int:
    return sum(rows.shape[0] for _, rows in iter_batches(n, f))


def with_min_degree(f: GraphFilter, d: int) -> GraphFilter:
    return replace(f, min_degree=d)
