"""Cycle and path length spectra with certificates, residue and AP-family queries."""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import _kernels as K
from .graph import Graph, GraphError, build_graph, canonical_labeling

SPECTRUM_LIMIT = 16


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class CycleCertificate:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def validate(self, g: Graph) -> None:
        vs = self.vertices
        if len(vs) < 3:
            raise CertificateError(f"cycle of length {len(vs)}")
        if len(set(vs)) != len(vs):
            raise CertificateError(f"repeated vertex in {vs}")
        for i, v in enumerate(vs):
            if not g.has_edge(v, vs[(i + 1) % len(vs)]):
                raise CertificateError(f"{v} and {vs[(i + 1) % len(vs)]} not adjacent")


@dataclass(frozen=True)
class PathCertificate:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def validate(self, g: Graph, x: int | None = None, y: int | None = None) -> None:
        vs = self.vertices
        if len(vs) < 2 or len(set(vs)) != len(vs):
            raise CertificateError(f"bad path {vs}")
        for a, b in zip(vs, vs[1:]):
            if not g.has_edge(a, b):
                raise CertificateError(f"{a} and {b} not adjacent")
        if x is not None and (vs[0], vs[-1]) not in ((x, y), (y, x)):
            raise CertificateError(f"path {vs} does not join {x} and {y}")


@dataclass(frozen=True)
class Spectrum:
    lengths: tuple[int, ...]
    witnesses: dict[int, CycleCertificate] = field(compare=False)
    complete: bool = True

    def __contains__(self, length: int) -> bool:
        return length in self.lengths

    def residues(self, k: int) -> frozenset[int]:
        return frozenset(L % k for L in self.lengths)


@dataclass(frozen=True)
class PathSpectrum:
    x: int
    y: int
    lengths: tuple[int, ...]
    witnesses: dict[int, PathCertificate] = field(compare=False)


@dataclass(frozen=True)
class APFamily:
    first: int
    difference: int
    count: int
    witnesses: tuple = ()

    @property
    def lengths(self) -> list[int]:
        return [self.first + i * self.difference for i in range(self.count)]


def _orient(vs) -> CycleCertificate:
    # root first, then the smaller of its two cycle neighbours
    vs = tuple(int(v) for v in vs)
    if len(vs) > 2 and vs[1] > vs[-1]:
        vs = (vs[0],) + vs[:0:-1]
    return CycleCertificate(vs)


def _mask_lengths(mask: int) -> list[int]:
    return [i + 1 for i in range(64) if mask >> i & 1]


def _classes(targets: Iterable[tuple[int, int]], n: int) -> np.ndarray:
    out = []
    for ell, k in targets:
        if k < 1:
            raise ValueError("modulus must be positive")
        m = 0
        for L in range(3, n + 1):
            if L % k == ell % k:
                m |= 1 << (L - 1)
        out.append(m)
    return np.array(out, dtype=np.uint64)


def full_classes(n: int) -> np.ndarray:
    return np.array([1 << (L - 1) for L in range(3, n + 1)] or [0], dtype=np.uint64)


def _check_size(g: Graph, override: bool) -> None:
    if g.n > SPECTRUM_LIMIT and not override:
        raise GraphError(f"n={g.n} exceeds the spectrum limit {SPECTRUM_LIMIT}; pass override=True")


_cache: dict[bytes, tuple[tuple[int, ...], dict[int, tuple[int, ...]]]] = {}
_cache_lock = threading.Lock()
_cache_enabled = False


def enable_cache(flag: bool = True) -> None:
    """Memoise full spectra by canonical form (off by default)."""
    global _cache_enabled
    _cache_enabled = flag
    if not flag:
        with _cache_lock:
            _cache.clear()


def cycle_spectrum(
    g: Graph,
    stop_when: Iterable[tuple[int, int]] | None = None,
    override: bool = False,
) -> Spectrum:
    """All cycle lengths of ``g`` with one witness each.

    With ``stop_when`` (pairs ``(ell, k)``) the search ends as soon as every
    requested residue class has a witness; the result is then marked
    incomplete and is only exact for those classes.
    """
    _check_size(g, override)
    if g.n < 3:
        return Spectrum((), {}, True)
    if stop_when is None and _cache_enabled:
        return _cached_spectrum(g)
    classes = full_classes(g.n) if stop_when is None else _classes(stop_when, g.n)
    found, wit = K.search_cycles(g.rows, g.n, classes, True)
    lengths = _mask_lengths(int(found))
    witnesses = {L: _orient(wit[L - 1, :L]) for L in lengths}
    return Spectrum(tuple(lengths), witnesses, stop_when is None)


def _cached_spectrum(g: Graph) -> Spectrum:
    from .graph import canonical_code

    lab = canonical_labeling(g)
    key = canonical_code(g)
    with _cache_lock:
        hit = _cache.get(key)
    if hit is None:
        pos = {v: i for i, v in enumerate(lab)}
        cg = g.relabel([pos[v] for v in range(g.n)])
        found, wit = K.search_cycles(cg.rows, cg.n, full_classes(g.n), True)
        lengths = tuple(_mask_lengths(int(found)))
        hit = (lengths, {L: tuple(int(v) for v in wit[L - 1, :L]) for L in lengths})
        with _cache_lock:
            _cache[key] = hit
    lengths, canon_wit = hit
    return Spectrum(lengths, {L: CycleCertificate(tuple(lab[i] for i in w)) for L, w in canon_wit.items()})


def cycle_lengths_mask(g: Graph) -> int:
    if g.n < 3:
        return 0
    found, _ = K.search_cycles(g.rows, g.n, full_classes(g.n), False)
    return int(found)


def path_spectrum(g: Graph, x: int, y: int, override: bool = False) -> PathSpectrum:
    if x == y:
        raise GraphError("path endpoints must differ")
    _check_size(g, override)
    classes = np.array([1 << (L - 1) for L in range(1, g.n)], dtype=np.uint64)
    found, wit = K.search_paths(g.rows, g.n, x, y, classes, True)
    lengths = _mask_lengths(int(found))
    witnesses = {L: PathCertificate(tuple(int(v) for v in wit[L - 1, : L + 1])) for L in lengths}
    return PathSpectrum(x, y, tuple(lengths), witnesses)


def path_lengths_mask(g: Graph, x: int, y: int) -> int:
    classes = np.array([1 << (L - 1) for L in range(1, max(g.n, 2))], dtype=np.uint64)
    found, _ = K.search_paths(g.rows, g.n, x, y, classes, False)
    return int(found)


def has_cycle_mod(g: Graph, ell: int, k: int) -> CycleCertificate | None:
    if k < 1 or not 0 <= ell < k:
        raise ValueError("need k >= 1 and 0 <= ell < k")
    if g.n < 3:
        return None
    found, wit = K.search_cycles(g.rows, g.n, _classes([(ell, k)], g.n), True)
    lengths = _mask_lengths(int(found))
    if not lengths:
        return None
    L = lengths[0]
    return _orient(wit[L - 1, :L])


@dataclass(frozen=True)
class ResidueCoverage:
    k: int
    residues: frozenset[int]
    all_covered: bool
    all_even_covered: bool


def residue_coverage(g: Graph, k: int) -> ResidueCoverage:
    if k < 1:
        raise ValueError("k must be positive")
    res = cycle_spectrum(g, stop_when=[(r, k) for r in range(k)]).residues(k)
    evens = {ell for ell in range(0, k) if ell % 2 == 0}
    return ResidueCoverage(k, res, len(res) == k, evens <= res)


def best_progression(lengths: Iterable[int]) -> tuple[int, int, int] | None:
    """(first, difference, count) of the longest AP with difference 1 or 2.

    Ties prefer difference 1, then the smaller first term.
    """
    ls = sorted(set(lengths))
    if not ls:
        return None
    present = set(ls)
    best = None
    for d in (1, 2):
        for a in ls:
            if a - d in present:
                continue
            c = 1
            while a + c * d in present:
                c += 1
            if best is None or c > best[2]:
                best = (a, d, c)
    return best


def max_admissible_family(g: Graph) -> APFamily:
    spec = cycle_spectrum(g)
    best = best_progression(spec.lengths)
    if best is None:
        raise GraphError("graph has no cycle")
    a, d, c = best
    return APFamily(a, d, c, tuple(spec.witnesses[a + i * d] for i in range(c)))


def max_admissible_path_family(g: Graph, x: int, y: int) -> APFamily:
    spec = path_spectrum(g, x, y)
    best = best_progression(L for L in spec.lengths if L >= 2)
    if best is None:
        raise GraphError(f"no ({x},{y})-path of length at least 2")
    a, d, c = best
    return APFamily(a, d, c, tuple(spec.witnesses[a + i * d] for i in range(c)))


class DiagonalClass(enum.Enum):
    DIAGONAL = "diagonal"
    QUASI_DIAGONAL = "quasi-diagonal"
    SUB_QUASI_DIAGONAL = "sub-quasi-diagonal"
    OTHER = "other"


def classify_cycle_pair(c: CycleCertificate, u: int, v: int) -> tuple[int, DiagonalClass]:
    vs = c.vertices
    if u not in vs or v not in vs:
        raise GraphError(f"{u} or {v} not on the cycle")
    if u == v:
        raise GraphError("vertices must differ")
    L = len(vs)
    gap = abs(vs.index(u) - vs.index(v))
    d = min(gap, L - gap)
    if L % 2 == 0:
        kind = {L // 2: DiagonalClass.DIAGONAL,
                L // 2 - 1: DiagonalClass.QUASI_DIAGONAL,
                L // 2 - 2: DiagonalClass.SUB_QUASI_DIAGONAL}.get(d, DiagonalClass.OTHER)
    else:
        kind = DiagonalClass.QUASI_DIAGONAL if d == (L - 1) // 2 else DiagonalClass.OTHER
    return d, kind


def qdi_graph(c: CycleCertificate) -> Graph:
    """Quasi-diagonal graph of a cycle; vertex ``i`` is the ``i``-th vertex of ``c``."""
    L = c.length
    if L < 5:
        raise GraphError("quasi-diagonal graph needs a cycle of length at least 5")
    step = L // 2 - 1 if L % 2 == 0 else (L - 1) // 2
    edges = {tuple(sorted((i, (i + step) % L))) for i in range(L)}
    return build_graph(L, sorted(edges))
