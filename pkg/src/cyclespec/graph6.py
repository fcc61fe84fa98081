"""graph6 reading and writing (single-byte header, n <= 62)."""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .graph import Graph, GraphError, MAX_VERTICES


class Graph6Error(GraphError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"parse error at byte {offset}: {message}")
        self.offset = offset


def write_graph6(g: Graph) -> str:
    n = g.n
    if n > 62:
        raise GraphError("graph6 writer supports n <= 62 only")
    out = [chr(63 + n)]
    acc = 0
    nbits = 0
    for j in range(1, n):
        col = g.adjacency[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def parse_graph6(text: str, max_vertices: int = MAX_VERTICES) -> Graph:
    line = text.strip("\n").rstrip("\r")
    if line.startswith(">>graph6<<"):
        line = line[10:]
        base = 10
    else:
        base = 0
    if not line:
        raise Graph6Error("empty input", base)
    head = ord(line[0])
    if head == 126:
        raise Graph6Error("multi-byte order header not supported", base)
    if not 63 <= head <= 125:
        raise Graph6Error(f"invalid header byte {line[0]!r}", base)
    n = head - 63
    if n > max_vertices:
        raise Graph6Error(f"order {n} above cap {max_vertices}", base)
    need = (n * (n - 1) // 2 + 5) // 6
    body = line[1:]
    for pos, ch in enumerate(body):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"invalid data byte {ch!r}", base + 1 + pos)
    if len(body) < need:
        raise Graph6Error(f"truncated: expected {need} data bytes, found {len(body)}", base + 1 + len(body))
    if len(body) > need:
        raise Graph6Error("trailing data", base + 1 + need)
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    total = n * (n - 1) // 2
    if total % 6:
        pad = (ord(body[-1]) - 63) & ((1 << (6 - total % 6)) - 1)
        if pad:
            raise Graph6Error("nonzero padding bits", base + need)
    return Graph(n, tuple(adj))


def read_graph6_stream(lines: Iterable[str] | TextIO) -> Iterator[Graph]:
    for line in lines:
        if line.strip():
            yield parse_graph6(line.strip())
