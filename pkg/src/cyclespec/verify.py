"""Executable theorem predicates and the exhaustive checker that runs them."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
import yaml

from . import _kernels as K
from .constructions import complete, complete_bipartite, l_construction, petersen
from .enumeration import ENUM_CAP, GraphFilter, external_batches, iter_batches
from .graph import (
    Graph,
    GraphError,
    automorphism_generators,
    canonical_code,
    from_rows,
    is_k_connected,
)
from .graph6 import write_graph6
from .spectrum import (
    CycleCertificate,
    PathCertificate,
    best_progression,
    has_cycle_mod,
    path_spectrum,
)

U = np.uint64


class UnknownSpec(KeyError):
    pass


class LemmaViolation(RuntimeError):
    pass


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# length-mask helpers


def lbit(L: int) -> int:
    return 1 << (L - 1)


def residue_mask(ell: int, k: int, n: int) -> int:
    return sum(lbit(L) for L in range(3, n + 1) if L % k == ell % k)


def window_mask(lo: int, hi: int) -> int:
    return sum(lbit(L) for L in range(max(lo, 1), hi + 1))


def even_residues(k: int) -> list[int]:
    return sorted({(2 * j) % k for j in range(k)})


def full_lengths(n: int) -> list[int]:
    return [lbit(L) for L in range(3, n + 1)]


def has_ap(found: np.ndarray, count: int, diffs: Sequence[int] = (1, 2)) -> np.ndarray:
    out = np.zeros(found.shape[0], np.bool_)
    for d in diffs:
        t = found.copy()
        for i in range(1, count):
            t &= found >> U(i * d)
        out |= t != 0
    return out


def hits_all(found: np.ndarray, masks: Iterable[int]) -> np.ndarray:
    out = np.ones(found.shape[0], np.bool_)
    for m in masks:
        out &= (found & U(m)) != 0
    return out


def degree_matrix(rows: np.ndarray) -> np.ndarray:
    b = rows.view(np.uint8).reshape(rows.shape[0], rows.shape[1], 8)
    return np.unpackbits(b, axis=2).sum(axis=2)


def edge_counts(rows: np.ndarray) -> np.ndarray:
    return degree_matrix(rows).sum(axis=1) // 2


# ---------------------------------------------------------------------------
# exception families


@dataclass(frozen=True)
class ExceptionFamily:
    label: str
    build: Callable[[dict, int], tuple[str, Graph] | None]


def _complete_at(size_of: Callable[[dict], int], label: str) -> ExceptionFamily:
    def build(p, n):
        s = size_of(p)
        return (f"K_{s}", complete(s)) if n == s else None

    return ExceptionFamily(label, build)


def _kst_at(side_of: Callable[[dict], int], label: str) -> ExceptionFamily:
    def build(p, n):
        s = side_of(p)
        t = n - s
        if t < 1:
            return None
        a, b = sorted((s, t))
        return f"K_{{{a},{b}}}", complete_bipartite(s, t)

    return ExceptionFamily(label, build)


def _fixed(name: str, g: Graph) -> ExceptionFamily:
    return ExceptionFamily(name, lambda p, n: (name, g) if n == g.n else None)


PETERSEN = _fixed("Petersen", petersen())


# ---------------------------------------------------------------------------
# statement records


@dataclass(frozen=True)
class TheoremSpec:
    """One checkable statement.

    ``hypothesis(p, n)`` gives the enumeration filter at order ``n`` (or None
    when the order is outside the statement).  For ``kind == "graph"`` the
    cycle-length classes from ``classes(p, n)`` are resolved for every graph
    and ``conclusion(found, rows, n, p)`` is evaluated in bulk; ``extra`` adds
    hypothesis clauses that are not enumeration filters.  For ``kind ==
    "pairs"`` ``instances(g, p)`` yields one verdict per marked instance.
    """

    id: str
    summary: str
    defaults: dict
    hypothesis: Callable[[dict, int], GraphFilter | None]
    n_min: int = 3
    desk_n_max: int = 8
    kind: str = "graph"
    classes: Callable[[dict, int], list[int]] = lambda p, n: []
    conclusion: Callable | None = None
    extra: Callable | None = None
    instances: Callable | None = None
    exceptions: tuple[ExceptionFamily, ...] = ()
    check_params: Callable[[dict], None] = lambda p: None
    acceptance: bool = True

    def params(self, given: dict | None = None) -> dict:
        p = dict(self.defaults)
        for key, value in (given or {}).items():
            if value is None:
                continue
            if key not in p:
                raise ValueError(f"{self.id} takes no parameter {key!r}")
            p[key] = value
        self.check_params(p)
        return p


def _need(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def _k_at_least(lo: int, even: bool = False, odd: bool = False):
    def check(p):
        _need(p["k"] >= lo, f"k must be at least {lo}")
        if even:
            _need(p["k"] % 2 == 0, "k must be even")
        if odd:
            _need(p["k"] % 2 == 1, "k must be odd")

    return check


def _two_conn(d: int, **kw) -> GraphFilter:
    return GraphFilter(min_degree=d, connectivity_at_least=2, **kw)


def _low_degree_at_most(threshold: int, count: int):
    def extra(rows, n, p, found):
        return (degree_matrix(rows) < threshold).sum(axis=1) <= count

    return extra


def _degree_equal_at_most(value: int, count: int):
    def extra(rows, n, p, found):
        return (degree_matrix(rows) == value).sum(axis=1) <= count

    return extra


def _conn_bound(p: dict) -> int:
    # least integer >= (k+2)/2 - r
    return -(-(p["k"] + 2 - 2 * p["r"]) // 2)


def _conn_filter(p, n):
    if _conn_bound(p) <= 2:
        return None  # 2-connected graphs already satisfy it
    return _two_conn(max(p["k"] - p["r"], 0))


def _below_conn(rows, n, p, found):
    return ~K.batch_kappa_at_least(rows, n, _conn_bound(p))


def _bound_0_mod_k(p, n):
    k = p["k"]
    return (k - 1) * (n - k + 1)


def _forbid_residue(ell, k, n):
    return residue_mask(ell, k, n)


def _turan_filter(p, n):
    k = p["k"]
    if n < max(3, 2 * k - 3):
        return None
    return GraphFilter(forbidden_lengths=_forbid_residue(0, k, n), min_edges=_bound_0_mod_k(p, n))


def _turan_conclusion(found, rows, n, p):
    bound = _bound_0_mod_k(p, n)
    e = edge_counts(rows)
    ok = e <= bound
    if p["k"] == 3:
        code = canonical_code(complete_bipartite(2, n - 2))
        for i in np.flatnonzero(e == bound):
            ok[i] = canonical_code(from_rows(rows[i])) == code
    return ok


def _gyori_bound(n):
    return (19 * (n - 1)) // 12


def _edge_bound_filter(p, n):
    k = p["k"]
    if n < max(3, 2 * k - 3):
        return None
    lo = _bound_0_mod_k(p, n) + 1
    if lo > n * (n - 1) // 2:
        return None
    return GraphFilter(min_edges=lo)


# marked instances -----------------------------------------------------------


def pair_orbits(g: Graph, ordered: bool) -> list[tuple[int, int]]:
    """One representative (x, y) per Aut(g)-orbit of vertex pairs."""
    pairs = [(x, y) for x in range(g.n) for y in range(g.n) if x != y and (ordered or x < y)]
    index = {q: i for i, q in enumerate(pairs)}
    parent = list(range(len(pairs)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for gen in automorphism_generators(g):
        for i, (x, y) in enumerate(pairs):
            a, b = gen[x], gen[y]
            if not ordered and a > b:
                a, b = b, a
            ra, rb = find(i), find(index[(a, b)])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return [q for i, q in enumerate(pairs) if find(i) == i]


def augmented_two_connected(g: Graph, x: int, y: int) -> bool:
    h = g if g.has_edge(x, y) else g.with_edge(x, y)
    return is_k_connected(h, 2)


def _path_family(mask_lengths: Iterable[int], count: int, allow_short: bool = False,
                 diffs: Sequence[int] = (1, 2)) -> bool:
    ls = sorted(L for L in mask_lengths if allow_short or L >= 2)
    present = set(ls)
    for d in diffs:
        for a in ls:
            if all(a + i * d in present for i in range(count)):
                return True
    return False


def _low_outside(g: Graph, x: int, y: int, threshold: int) -> list[int]:
    return [v for v in range(g.n) if v not in (x, y) and g.degree(v) < threshold]


def _adm_path_instances(exempt: int):
    def instances(g: Graph, p: dict):
        k = p["k"]
        for x, y in pair_orbits(g, ordered=False):
            if len(_low_outside(g, x, y, k + 1)) > exempt:
                continue
            if not augmented_two_connected(g, x, y):
                continue
            lengths = path_spectrum(g, x, y).lengths
            strict = _path_family(lengths, k)
            loose = _path_family(lengths, k, allow_short=True)
            note = "family_with_length_1_allowed" if loose else "no_family_even_with_length_1"
            yield (x, y), ("holds" if strict else "counterexample"), note

    return instances


def _degree_sum_instances(g: Graph, p: dict):
    k = p["k"]
    for x, y in pair_orbits(g, ordered=False):
        if _low_outside(g, x, y, k):
            continue
        if any(g.degree(u) + g.degree(v) < 2 * k + 1
               for u, v in g.edges() if u not in (x, y) and v not in (x, y)):
            continue
        if not augmented_two_connected(g, x, y):
            continue
        lengths = path_spectrum(g, x, y).lengths
        ok = _path_family(lengths, k, diffs=(1,)) or _path_family(lengths, k - 1, diffs=(2,))
        yield (x, y), ("holds" if ok else "counterexample"), None


# trichotomy ------------------------------------------------------------------


@dataclass(frozen=True)
class TrichotomyOutcome:
    kind: str  # "cycle_2_mod_4" | "path_pair" | "construction"
    cycle: CycleCertificate | None = None
    paths: tuple[PathCertificate, PathCertificate] | None = None
    construction: int | None = None


_L_CODES: dict[int, bytes] = {}


def _marked_code(g: Graph, x: int, y: int) -> bytes:
    colors = [0] * g.n
    colors[x], colors[y] = 1, 2
    return canonical_code(g, colors)


def _l_codes() -> dict[int, bytes]:
    if not _L_CODES:
        for i in range(1, 5):
            m = l_construction(i)
            _L_CODES[i] = _marked_code(m.graph, m.marks["x"], m.marks["y"])
    return _L_CODES


def trichotomy_check(g: Graph, x: int, y: int) -> TrichotomyOutcome:
    """Witness for the first of: a (2 mod 4)-cycle, two (x,y)-paths whose
    lengths differ by 2 mod 4, or g being one of the gadgets L_1..L_4."""
    if x == y or not (0 <= x < g.n and 0 <= y < g.n):
        raise PreconditionError("x and y must be distinct vertices")
    low = _low_outside(g, x, y, 3)
    if low:
        raise PreconditionError(f"vertex {low[0]} outside x, y has degree {g.degree(low[0])} < 3")
    if not augmented_two_connected(g, x, y):
        raise PreconditionError("g + xy is not 2-connected")
    cyc = has_cycle_mod(g, 2, 4)
    if cyc is not None:
        return TrichotomyOutcome("cycle_2_mod_4", cycle=cyc)
    ps = path_spectrum(g, x, y)
    for a in ps.lengths:
        for b in ps.lengths:
            if b > a and (b - a) % 4 == 2:
                return TrichotomyOutcome("path_pair", paths=(ps.witnesses[a], ps.witnesses[b]))
    code = _marked_code(g, x, y)
    for i, c in _l_codes().items():
        if c == code:
            return TrichotomyOutcome("construction", construction=i)
    raise LemmaViolation(f"no outcome for {write_graph6(g)} with x={x}, y={y}")


def _trichotomy_instances(g: Graph, p: dict):
    for x, y in pair_orbits(g, ordered=True):
        if _low_outside(g, x, y, 3) or not augmented_two_connected(g, x, y):
            continue
        try:
            out = trichotomy_check(g, x, y)
        except LemmaViolation:
            yield (x, y), "counterexample", None
            continue
        note = out.kind if out.kind != "construction" else f"construction_L{out.construction}"
        yield (x, y), "holds", note


# ---------------------------------------------------------------------------
# registry


def _adm(found, rows, n, p):
    return has_ap(found, p["k"])


def _residues(rs_of):
    def concl(found, rows, n, p):
        return hits_all(found, [residue_mask(r, p["k"], n) for r in rs_of(p)])

    return concl


def _residue_classes(rs_of):
    return lambda p, n: [residue_mask(r, p["k"], n) for r in rs_of(p)]


def _ev(p):
    return even_residues(p["k"])


def _ev_not2(p):
    return [r for r in even_residues(p["k"]) if r != 2 % p["k"]]


def _all_res(p):
    return list(range(p["k"]))


def _mod3(r):
    return TheoremSpec(
        id=f"mod3-residue-{r}",
        summary=f"2-connected, min degree >= 3: has a ({r} mod 3)-cycle",
        defaults={},
        hypothesis=lambda p, n: _two_conn(3),
        desk_n_max=10,
        classes=lambda p, n: [residue_mask(r, 3, n)],
        conclusion=lambda found, rows, n, p: (found & U(residue_mask(r, 3, n))) != 0,
        exceptions={0: (), 1: (PETERSEN,),
                    2: (_fixed("K_4", complete(4)), _kst_at(lambda p: 3, "K_{3,n-3}"))}[r],
    )


def _build_registry() -> dict[str, TheoremSpec]:
    k_plus_1 = _complete_at(lambda p: p["k"] + 1, "K_{k+1}")
    k_n_minus_k = _kst_at(lambda p: p["k"], "K_{k,n-k}")
    specs = [
        TheoremSpec(
            id="adm-cycles-min-deg-k",
            summary="2-connected, min degree >= k >= 4: k admissible cycles",
            defaults={"k": 4},
            hypothesis=lambda p, n: _two_conn(p["k"]),
            desk_n_max=9,
            classes=lambda p, n: full_lengths(n),
            conclusion=_adm,
            exceptions=(k_plus_1, k_n_minus_k),
            check_params=_k_at_least(4),
        ),
        TheoremSpec(
            id="even-residues-min-deg-k",
            summary="2-connected, min degree >= k >= 4: (l mod k)-cycles for all even l",
            defaults={"k": 4},
            hypothesis=lambda p, n: _two_conn(p["k"]),
            desk_n_max=9,
            classes=_residue_classes(_ev),
            conclusion=_residues(_ev),
            exceptions=(k_plus_1, k_n_minus_k),
            check_params=_k_at_least(4),
        ),
        TheoremSpec(
            id="even-residues-not-2-min-deg-k",
            summary="2-connected, min degree >= k >= 4: (l mod k)-cycles for even l != 2 mod k",
            defaults={"k": 4},
            hypothesis=lambda p, n: _two_conn(p["k"]),
            desk_n_max=9,
            classes=_residue_classes(_ev_not2),
            conclusion=_residues(_ev_not2),
            check_params=_k_at_least(4),
        ),
        TheoremSpec(
            id="even-residues-even-k-min-deg-k-minus-1",
            summary="even k >= 4, 2-connected, min degree >= k-1, order >= k+2: all even residues",
            defaults={"k": 4},
            hypothesis=lambda p, n: _two_conn(p["k"] - 1, min_order=p["k"] + 2),
            desk_n_max=10,
            classes=_residue_classes(_ev),
            conclusion=_residues(_ev),
            check_params=_k_at_least(4, even=True),
        ),
        TheoremSpec(
            id="all-residues-non-bipartite",
            summary="2-connected non-bipartite, min degree >= k >= 3: all residues mod k",
            defaults={"k": 3},
            hypothesis=lambda p, n: _two_conn(p["k"], bipartite="forbid"),
            desk_n_max=9,
            classes=_residue_classes(_all_res),
            conclusion=_residues(_all_res),
            exceptions=(k_plus_1, ExceptionFamily(
                "Petersen (k=3)", lambda p, n: ("Petersen", petersen()) if p["k"] == 3 and n == 10 else None)),
            check_params=_k_at_least(3),
        ),
        TheoremSpec(
            id="edge-bound-0-mod-k",
            summary="n >= 2k-3 and e > (k-1)(n-k+1): has a (0 mod k)-cycle",
            defaults={"k": 3},
            hypothesis=_edge_bound_filter,
            desk_n_max=8,
            classes=lambda p, n: [residue_mask(0, p["k"], n)],
            conclusion=lambda found, rows, n, p: (found & U(residue_mask(0, p["k"], n))) != 0,
            check_params=_k_at_least(3),
        ),
        TheoremSpec(
            id="turan-0-mod-k",
            summary="(0 mod k)-cycle-free graphs with n >= 2k-3 have e <= (k-1)(n-k+1); "
                    "for k = 3 equality only for K_{2,n-2} (checked on graphs at or above the bound)",
            defaults={"k": 3},
            hypothesis=_turan_filter,
            desk_n_max=9,
            conclusion=_turan_conclusion,
            check_params=_k_at_least(3),
        ),
        TheoremSpec(
            id="chen-saito-degree",
            summary="all vertices but at most one have degree >= 3: has a (0 mod 3)-cycle",
            defaults={},
            hypothesis=lambda p, n: GraphFilter(),
            n_min=2,
            desk_n_max=8,
            extra=_low_degree_at_most(3, 1),
            classes=lambda p, n: [residue_mask(0, 3, n)],
            conclusion=lambda found, rows, n, p: (found & U(residue_mask(0, 3, n))) != 0,
        ),
        TheoremSpec(
            id="gyori-0-mod-4",
            summary="(0 mod 4)-cycle-free graphs have e <= floor(19(n-1)/12) (checked at or above the bound)",
            defaults={},
            hypothesis=lambda p, n: GraphFilter(forbidden_lengths=residue_mask(0, 4, n),
                                                min_edges=_gyori_bound(n)),
            n_min=1,
            desk_n_max=9,
            conclusion=lambda found, rows, n, p: edge_counts(rows) <= _gyori_bound(n),
        ),
        TheoremSpec(
            id="conn-lemma-adm",
            summary="2-connected, min degree >= k-r, connectivity < (k+2)/2-r: k admissible cycles",
            defaults={"k": 4, "r": 0},
            hypothesis=_conn_filter,
            desk_n_max=9,
            extra=_below_conn,
            classes=lambda p, n: full_lengths(n),
            conclusion=_adm,
            check_params=lambda p: (_need(p["k"] >= 2, "k must be at least 2"),
                                    _need(p["r"] >= 0, "r must be non-negative")),
        ),
        TheoremSpec(
            id="conn-lemma-even-residues",
            summary="2-connected, min degree >= k-r, connectivity < (k+2)/2-r: all even residues mod k",
            defaults={"k": 4, "r": 0},
            hypothesis=_conn_filter,
            desk_n_max=9,
            extra=_below_conn,
            classes=_residue_classes(_ev),
            conclusion=_residues(_ev),
            check_params=lambda p: (_need(p["k"] >= 2, "k must be at least 2"),
                                    _need(p["r"] >= 0, "r must be non-negative")),
        ),
        TheoremSpec(
            id="three-connected-consecutive-even",
            summary="3-connected, order >= 6: two cycles of consecutive even lengths",
            defaults={},
            hypothesis=lambda p, n: GraphFilter(min_degree=3, connectivity_at_least=3, min_order=6),
            desk_n_max=9,
            classes=lambda p, n: [lbit(L) for L in range(4, n + 1, 2)],
            conclusion=lambda found, rows, n, p: has_ap(found & U(residue_mask(0, 2, n)), 2, (2,)),
        ),
        TheoremSpec(
            id="dean-lesniak-saito",
            summary="min degree >= 2 with at most two vertices of degree 2: has a (0 mod 4)-cycle",
            defaults={},
            hypothesis=lambda p, n: GraphFilter(min_degree=2),
            desk_n_max=8,
            extra=_degree_equal_at_most(2, 2),
            classes=lambda p, n: [residue_mask(0, 4, n)],
            conclusion=lambda found, rows, n, p: (found & U(residue_mask(0, 4, n))) != 0,
        ),
        TheoremSpec(
            id="two-mod-four-lemma",
            summary="2-connected, order >= 6, min degree >= 3: has a (2 mod 4)-cycle",
            defaults={},
            hypothesis=lambda p, n: _two_conn(3, min_order=6),
            desk_n_max=10,
            classes=lambda p, n: [residue_mask(2, 4, n)],
            conclusion=lambda found, rows, n, p: (found & U(residue_mask(2, 4, n))) != 0,
        ),
        TheoremSpec(
            id="odd-cycles-1-3-mod-4",
            summary="3-connected non-bipartite: cycles of lengths 1 and 3 mod 4",
            defaults={},
            hypothesis=lambda p, n: GraphFilter(min_degree=3, connectivity_at_least=3, bipartite="forbid"),
            desk_n_max=9,
            classes=lambda p, n: [residue_mask(1, 4, n), residue_mask(3, 4, n)],
            conclusion=lambda found, rows, n, p: hits_all(found, [residue_mask(1, 4, n), residue_mask(3, 4, n)]),
            exceptions=(_fixed("K_4", complete(4)), PETERSEN),
        ),
        TheoremSpec(
            id="woodall",
            summary="e > floor(n^2/4): cycles of every length from 3 to (n+3)/2",
            defaults={},
            hypothesis=lambda p, n: GraphFilter(min_edges=n * n // 4 + 1) if n * n // 4 < n * (n - 1) // 2 else None,
            desk_n_max=9,
            classes=lambda p, n: [lbit(L) for L in range(3, (n + 3) // 2 + 1)],
            conclusion=lambda found, rows, n, p: (found & U(window_mask(3, (n + 3) // 2))) == U(window_mask(3, (n + 3) // 2)),
        ),
        TheoremSpec(
            id="bondy-pancyclic",
            summary="min degree > n/2: cycles of every length from 3 to n",
            defaults={},
            hypothesis=lambda p, n: GraphFilter(min_degree=n // 2 + 1),
            desk_n_max=9,
            classes=lambda p, n: full_lengths(n),
            conclusion=lambda found, rows, n, p: (found & U(window_mask(3, n))) == U(window_mask(3, n)),
        ),
        TheoremSpec(
            id="bondy-vince",
            summary="connected with at most two vertices of degree < 3: two admissible cycles",
            defaults={},
            hypothesis=lambda p, n: GraphFilter(min_degree=1 if n > 1 else 0, connectivity_at_least=1 if n > 1 else 0),
            n_min=1,
            desk_n_max=8,
            extra=_low_degree_at_most(3, 2),
            classes=lambda p, n: full_lengths(n),
            conclusion=lambda found, rows, n, p: has_ap(found, 2),
            exceptions=(_fixed("K_1", complete(1)), _fixed("K_2", complete(2))),
        ),
        _mod3(0),
        _mod3(1),
        _mod3(2),
        TheoremSpec(
            id="four-cycle-adm-lemma",
            summary="2-connected, min degree >= k >= 3, contains a 4-cycle: k admissible cycles",
            defaults={"k": 3},
            hypothesis=lambda p, n: _two_conn(p["k"]),
            desk_n_max=9,
            extra=lambda rows, n, p, found: (found & U(lbit(4))) != 0,
            classes=lambda p, n: full_lengths(n),
            conclusion=_adm,
            exceptions=(k_plus_1, k_n_minus_k),
            check_params=_k_at_least(3),
        ),
        TheoremSpec(
            id="triangle-consecutive-cycles",
            summary="2-connected, min degree >= k >= 2, contains a triangle: k cycles of consecutive lengths",
            defaults={"k": 3},
            hypothesis=lambda p, n: _two_conn(p["k"]),
            desk_n_max=9,
            extra=lambda rows, n, p, found: (found & U(lbit(3))) != 0,
            classes=lambda p, n: full_lengths(n),
            conclusion=lambda found, rows, n, p: has_ap(found, p["k"], (1,)),
            exceptions=(k_plus_1,),
            check_params=_k_at_least(2),
        ),
        TheoremSpec(
            id="adm-paths-min-degree",
            summary="G+xy 2-connected, d(v) >= k+1 off {x,y}: k admissible (x,y)-paths",
            defaults={"k": 2},
            hypothesis=lambda p, n: GraphFilter(min_degree=1, connectivity_at_least=1),
            desk_n_max=7,
            kind="pairs",
            instances=_adm_path_instances(0),
            check_params=_k_at_least(1),
        ),
        TheoremSpec(
            id="adm-paths-one-exempt",
            summary="order >= 4, G+xy 2-connected, d(v) >= k+1 off {x,y,z}: k admissible (x,y)-paths",
            defaults={"k": 2},
            hypothesis=lambda p, n: GraphFilter(min_degree=1, connectivity_at_least=1, min_order=4),
            desk_n_max=7,
            kind="pairs",
            instances=_adm_path_instances(1),
            check_params=_k_at_least(1),
        ),
        TheoremSpec(
            id="adm-paths-degree-sum",
            summary="G+xy 2-connected, d(v) >= k off {x,y}, degree sum >= 2k+1 on edges avoiding x,y: "
                    "k consecutive or k-1 difference-two admissible (x,y)-paths",
            defaults={"k": 2},
            hypothesis=lambda p, n: GraphFilter(min_degree=1, connectivity_at_least=1),
            desk_n_max=7,
            kind="pairs",
            instances=_degree_sum_instances,
            check_params=_k_at_least(2),
        ),
        TheoremSpec(
            id="trichotomy-2-mod-4",
            summary="G+xy 2-connected, d(v) >= 3 off {x,y}: a (2 mod 4)-cycle, two (x,y)-paths "
                    "differing by 2 mod 4, or G is L_i(x,y)",
            defaults={},
            hypothesis=lambda p, n: GraphFilter(min_degree=1, connectivity_at_least=1),
            desk_n_max=8,
            kind="pairs",
            instances=_trichotomy_instances,
        ),
        TheoremSpec(
            id="adm-cycles-k3-search",
            summary="search: 2-connected, min degree >= 3 graphs without 3 admissible cycles other than Petersen",
            defaults={},
            hypothesis=lambda p, n: _two_conn(3),
            desk_n_max=10,
            kind="search",
            classes=lambda p, n: full_lengths(n),
            conclusion=lambda found, rows, n, p: has_ap(found, 3),
            exceptions=(PETERSEN, _fixed("K_4", complete(4)), _kst_at(lambda p: 3, "K_{3,n-3}")),
            acceptance=False,
        ),
    ]
    return {s.id: s for s in specs}


REGISTRY = _build_registry()


def registered_specs() -> list[TheoremSpec]:
    return list(REGISTRY.values())


def get_spec(spec_id: str) -> TheoremSpec:
    try:
        return REGISTRY[spec_id]
    except KeyError:
        raise UnknownSpec(spec_id) from None


# ---------------------------------------------------------------------------
# running


def _empty_partial() -> dict:
    return {"enumerated": 0, "hits": 0, "holds": 0, "exceptions": {}, "counterexamples": [], "notes": {}}


def _exception_table(spec: TheoremSpec, p: dict, n: int) -> dict[bytes, str]:
    table = {}
    for fam in spec.exceptions:
        built = fam.build(p, n)
        if built is not None:
            name, g = built
            table[canonical_code(g)] = name
    return table


def _eval_graph_batch(spec, p, n, rows, found, acc, table):
    hyp = np.ones(rows.shape[0], np.bool_)
    if spec.extra is not None:
        hyp &= spec.extra(rows, n, p, found)
    ok = spec.conclusion(found, rows, n, p)
    acc["enumerated"] += int(rows.shape[0])
    acc["hits"] += int(hyp.sum())
    acc["holds"] += int((hyp & ok).sum())
    for i in np.flatnonzero(hyp & ~ok):
        g = from_rows(rows[i])
        code = canonical_code(g)
        name = table.get(code)
        if name is not None:
            acc["exceptions"][name] = acc["exceptions"].get(name, 0) + 1
        else:
            acc["counterexamples"].append((code.hex(), write_graph6(g)))


def _eval_pairs_batch(spec, p, n, rows, acc):
    acc["enumerated"] += int(rows.shape[0])
    for r in rows:
        g = from_rows(r)
        for (x, y), verdict, note in spec.instances(g, p):
            acc["hits"] += 1
            if note:
                acc["notes"][note] = acc["notes"].get(note, 0) + 1
            if verdict == "holds":
                acc["holds"] += 1
            elif verdict == "counterexample":
                code = _marked_code(g, x, y)
                acc["counterexamples"].append((code.hex(), f"{write_graph6(g)} x={x} y={y}"))
            else:
                acc["exceptions"][verdict] = acc["exceptions"].get(verdict, 0) + 1


def _task_key(members, n, part, parts, source=None) -> str:
    body = ";".join(f"{sid}:{sorted(p.items())}" for sid, p in members)
    key = f"n{n}-p{part}of{parts}|{body}"
    return key + f"|source={os.path.abspath(source)}" if source else key


def _task_path(ckpt_dir: str, members, n, part, parts, source=None) -> str:
    import hashlib

    h = hashlib.sha1(_task_key(members, n, part, parts, source).encode()).hexdigest()[:16]
    return os.path.join(ckpt_dir, f"n{n:02d}-p{part:02d}of{parts:02d}-{h}.yaml")


def _run_task(args) -> tuple[list[dict], dict | None]:
    """Run one (order, filter group, partition) unit; returns per-member
    partials and, if stopped early, the resume position."""
    members, n, part, parts, ckpt_dir, budget, save_every, source = args
    specs = [(get_spec(sid), p) for sid, p in members]
    f = specs[0][0].hypothesis(specs[0][1], n)
    start = 0
    accs = [_empty_partial() for _ in specs]
    path = _task_path(ckpt_dir, members, n, part, parts, source) if ckpt_dir else None
    if path and os.path.exists(path):
        with open(path) as fh:
            state = yaml.safe_load(fh)
        if state["key"] != _task_key(members, n, part, parts, source):
            raise ValueError(f"checkpoint {path} belongs to a different run")
        accs = [_decode_partial(a) for a in state["partials"]]
        if state["done"]:
            return accs, None
        start = state["next_index"]

    masks = sorted({m for s, p in specs for m in s.classes(p, n)})
    classes = np.array(masks, dtype=np.uint64) if masks else None
    tables = [_exception_table(s, p, n) for s, p in specs]
    last_tag = start
    processed = 0
    last_save = time.monotonic()
    stopped_at = None

    def save(done, next_index):
        if not path:
            return
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            yaml.safe_dump({"key": _task_key(members, n, part, parts, source), "done": done,
                            "next_index": next_index,
                            "partials": [_encode_partial(a) for a in accs]}, fh, sort_keys=True)
        os.replace(tmp, path)

    batches = (external_batches(source, n, f, part, parts, start) if source
               else iter_batches(n, f, part, parts, start))
    for tag, rows in batches:
        if tag != last_tag:
            processed += 1
            if budget is not None and processed > budget:
                stopped_at = tag
                break
            if path and time.monotonic() - last_save > save_every:
                save(False, tag)
                last_save = time.monotonic()
            last_tag = tag
        found = K.batch_found(rows, n, classes) if classes is not None else np.zeros(rows.shape[0], np.uint64)
        for (s, p), acc, table in zip(specs, accs, tables):
            if s.kind == "pairs":
                _eval_pairs_batch(s, p, n, rows, acc)
            else:
                _eval_graph_batch(s, p, n, rows, found, acc, table)
    if stopped_at is not None:
        save(False, stopped_at)
        return accs, {"n": n, "part": part, "next_index": stopped_at}
    save(True, -1)
    return accs, None


def _encode_partial(a: dict) -> dict:
    return {**a, "counterexamples": [list(c) for c in a["counterexamples"]]}


def _decode_partial(a: dict) -> dict:
    return {**a, "counterexamples": [tuple(c) for c in a["counterexamples"]]}


def _merge(into: dict, part: dict) -> None:
    for key in ("enumerated", "hits", "holds"):
        into[key] += part[key]
    for key in ("exceptions", "notes"):
        for name, c in part[key].items():
            into[key][name] = into[key].get(name, 0) + c
    into["counterexamples"].extend(part["counterexamples"])


@dataclass
class VerificationReport:
    theorem: str
    params: dict
    n_range: tuple[int, int]
    graphs_enumerated: int = 0
    hypothesis_hits: int = 0
    conclusion_holds: int = 0
    exceptions: list[dict] = field(default_factory=list)
    counterexamples: list[str] = field(default_factory=list)
    per_order: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)
    status: str = ""
    complete: bool = True
    cursor: dict | None = None
    runtime: float = 0.0

    @property
    def exception_names(self) -> set[str]:
        return {e["name"] for e in self.exceptions}

    @property
    def exceptions_matched(self) -> int:
        return sum(e["count"] for e in self.exceptions)

    def consistent(self) -> bool:
        return self.hypothesis_hits == self.conclusion_holds + self.exceptions_matched + len(self.counterexamples)

    def as_dict(self) -> dict:
        """Serialisable form; the wall-clock runtime is left out on purpose so
        that identical runs give identical documents."""
        return {
            "theorem": self.theorem,
            "params": dict(self.params),
            "n_range": list(self.n_range),
            "graphs_enumerated": self.graphs_enumerated,
            "hypothesis_hits": self.hypothesis_hits,
            "conclusion_holds": self.conclusion_holds,
            "exceptions": self.exceptions,
            "counterexamples": self.counterexamples,
            "per_order": self.per_order,
            "notes": self.notes,
            "status": self.status,
            "complete": self.complete,
            "cursor": self.cursor,
        }


def _plan(runs: list[tuple[TheoremSpec, dict]], n_lo: list[int], n_hi: list[int]):
    """Group runs that share an enumeration filter at each order."""
    plan = []
    for n in range(min(n_lo), max(n_hi) + 1):
        groups: dict[tuple, list[int]] = {}
        for i, (s, p) in enumerate(runs):
            if not n_lo[i] <= n <= n_hi[i]:
                continue
            f = s.hypothesis(p, n)
            if f is None:
                continue
            key = (f, s.kind == "pairs")
            groups.setdefault(key, []).append(i)
        for key in sorted(groups, key=lambda k: repr(k)):
            plan.append((n, groups[key]))
    return plan


def verify_many(
    requests: Sequence[tuple[str, dict | None]],
    n_max: int | None = None,
    jobs: int = 1,
    n_min: int | None = None,
    checkpoint: str | None = None,
    budget: int | None = None,
    partitions: int | None = None,
    override_cap: bool = False,
    save_every: float = 60.0,
    source: str | None = None,
) -> list[VerificationReport]:
    """Run several specs, sharing one enumeration wherever filters agree."""
    t0 = time.monotonic()
    runs = [(get_spec(sid), get_spec(sid).params(p)) for sid, p in requests]
    n_hi = [n_max if n_max is not None else s.desk_n_max for s, _ in runs]
    n_lo = [max(s.n_min, n_min) if n_min is not None else s.n_min for s, _ in runs]
    if max(n_hi) > ENUM_CAP and not override_cap:
        raise GraphError(f"n_max {max(n_hi)} exceeds the enumeration cap {ENUM_CAP}")
    parts = partitions or max(8, jobs)
    if checkpoint:
        os.makedirs(checkpoint, exist_ok=True)
    plan = _plan(runs, n_lo, n_hi)
    tasks = []
    for n, idxs in plan:
        members = [(runs[i][0].id, runs[i][1]) for i in idxs]
        for part in range(parts):
            tasks.append(((members, n, part, parts, checkpoint, budget, save_every, source), n, idxs))
    if jobs > 1 and len(tasks) > 1:
        import multiprocessing as mp

        with mp.get_context("fork").Pool(jobs) as pool:
            results = pool.map(_run_task, [t[0] for t in tasks], chunksize=1)
    else:
        results = [_run_task(t[0]) for t in tasks]

    totals = [_empty_partial() for _ in runs]
    per_order = [dict() for _ in runs]
    pending = [[] for _ in runs]
    for (args, n, idxs), (accs, stop) in zip(tasks, results):
        for i, acc in zip(idxs, accs):
            _merge(totals[i], acc)
            row = per_order[i].setdefault(n, {"enumerated": 0, "hits": 0, "holds": 0})
            row["enumerated"] += acc["enumerated"]
            row["hits"] += acc["hits"]
            row["holds"] += acc["holds"]
            if stop is not None:
                pending[i].append([n, stop["part"], stop["next_index"]])
    elapsed = time.monotonic() - t0
    reports = []
    for i, (s, p) in enumerate(runs):
        t = totals[i]
        cex = [text for _, text in sorted(t["counterexamples"])]
        rep = VerificationReport(
            theorem=s.id,
            params=p,
            n_range=(n_lo[i], n_hi[i]),
            graphs_enumerated=t["enumerated"],
            hypothesis_hits=t["hits"],
            conclusion_holds=t["holds"],
            exceptions=[{"name": k, "count": c} for k, c in sorted(t["exceptions"].items())],
            counterexamples=cex,
            per_order={n: per_order[i][n] for n in sorted(per_order[i])},
            notes=dict(sorted(t["notes"].items())),
            complete=not pending[i],
            cursor=({"checkpoint": checkpoint, "pending": sorted(pending[i]), "partitions": parts}
                    if pending[i] else None),
            runtime=elapsed,
        )
        if not rep.complete:
            rep.status = "incomplete"
        elif s.kind == "search":
            rep.status = "search"
        elif rep.hypothesis_hits == 0:
            rep.status = "vacuous at this scale"
        elif cex:
            rep.status = "counterexample"
        else:
            rep.status = "verified"
        reports.append(rep)
    return reports


def verify_theorem(
    spec: str | TheoremSpec,
    n_max: int | None = None,
    jobs: int = 1,
    params: dict | None = None,
    **kw,
) -> VerificationReport:
    sid = spec.id if isinstance(spec, TheoremSpec) else spec
    return verify_many([(sid, params)], n_max=n_max, jobs=jobs, **kw)[0]
