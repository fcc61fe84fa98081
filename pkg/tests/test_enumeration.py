from functools import lru_cache

import networkx as nx
import numpy as np
import pytest

import oracles
from cyclespec import constructions as C
from cyclespec.enumeration import (
    CONNECTED,
    ENUM_CAP,
    GraphFilter,
    count_graphs,
    enumerate_graphs,
    iter_batches,
)
from cyclespec.graph import GraphError, bipartition, build_graph, canonical_code, code_from_rows, girth, is_k_connected, min_degree
from cyclespec.verify import residue_mask
from cyclespec.spectrum import cycle_spectrum

ALL = [1, 2, 4, 11, 34, 156, 1044, 12346]
CONN = [1, 1, 2, 6, 21, 112, 853, 11117]


def _nx(n, edges):
    h = nx.Graph()
    h.add_nodes_from(range(n))
    h.add_edges_from(edges)
    return h


@lru_cache(maxsize=None)
def labelled_table(n):
    """Every labelled graph on n vertices with its properties computed from scratch."""
    all_edges = list(oracles.labelled_graphs(n))
    masks = np.array([oracles.edge_bitmask(n, e) for e in all_edges], dtype=np.uint64)
    cyc = oracles.cycle_length_masks(n, masks) if n >= 3 else np.zeros(len(masks), np.uint64)
    table = []
    for edges, cm in zip(all_edges, cyc):
        degs = [0] * n
        for u, v in edges:
            degs[u] += 1
            degs[v] += 1
        lengths = oracles.mask_to_set(int(cm))
        table.append({
            "edges": edges,
            "degs": degs,
            "lengths": lengths,
            "kappa": oracles.brute_connectivity(n, edges) if n >= 2 else 0,
            "bipartite": not any(L % 2 for L in lengths),
            "code": canonical_code(build_graph(n, edges)),
        })
    return table


def satisfies(n, row, f: GraphFilter) -> bool:
    """Filter semantics evaluated on the precomputed labelled properties."""
    degs = row["degs"] or [0]
    lengths = row["lengths"]
    if min(degs) < f.min_degree:
        return False
    if f.max_degree is not None and max(degs) > f.max_degree:
        return False
    if f.connectivity_at_least and row["kappa"] < f.connectivity_at_least:
        return False
    if f.bipartite == "require" and not row["bipartite"]:
        return False
    if f.bipartite == "forbid" and row["bipartite"]:
        return False
    if n < f.min_order:
        return False
    if f.girth_at_least and lengths and min(lengths) < f.girth_at_least:
        return False
    if len(row["edges"]) < f.min_edges:
        return False
    if f.max_edges is not None and len(row["edges"]) > f.max_edges:
        return False
    if any(f.forbidden_lengths >> (L - 1) & 1 for L in lengths):
        return False
    return True


def test_counts_all_graphs():
    assert [count_graphs(n) for n in range(1, 9)] == ALL


@pytest.mark.slow
def test_count_all_graphs_n9():
    assert count_graphs(9) == 274668


def test_counts_connected():
    assert [count_graphs(n, CONNECTED) for n in range(2, 9)] == CONN[1:]


def test_examples():
    assert count_graphs(4, CONNECTED) == 6
    assert count_graphs(5) == 34
    assert count_graphs(4, GraphFilter(connectivity_at_least=1)) == oracles.brute_class_count(
        4, lambda n, e: nx.is_connected(_nx(n, e))
    )
    assert count_graphs(5) == oracles.brute_class_count(5)


def test_petersen_is_the_unique_cubic_girth_5_graph_on_10():
    f = GraphFilter(min_degree=3, max_degree=3, girth_at_least=5)
    gs = list(enumerate_graphs(10, f))
    assert len(gs) == 1
    assert canonical_code(gs[0]) == canonical_code(C.petersen())


def test_no_duplicates_and_deterministic():
    for n in range(1, 8):
        a = [canonical_code(g) for g in enumerate_graphs(n)]
        assert len(set(a)) == len(a)
        assert a == [canonical_code(g) for g in enumerate_graphs(n)]


FILTERS = [
    GraphFilter(),
    CONNECTED,
    GraphFilter(connectivity_at_least=2),
    GraphFilter(connectivity_at_least=3),
    GraphFilter(min_degree=2),
    GraphFilter(min_degree=3, connectivity_at_least=2),
    GraphFilter(max_degree=2),
    GraphFilter(bipartite="require"),
    GraphFilter(bipartite="forbid", connectivity_at_least=1),
    GraphFilter(girth_at_least=4),
    GraphFilter(min_edges=7),
    GraphFilter(max_edges=4),
    GraphFilter(min_edges=5, max_edges=6),
    GraphFilter(forbidden_lengths=residue_mask(0, 3, 6)),
    GraphFilter(forbidden_lengths=residue_mask(2, 4, 6), min_degree=1),
    GraphFilter(min_order=6),
]


@pytest.mark.parametrize("f", FILTERS, ids=lambda f: repr(f)[11:60])
def test_filters_match_labelled_brute_force(f):
    # canonical codes of every labelled graph on n <= 6 satisfying the filter
    for n in range(1, 7):
        want = {row["code"] for row in labelled_table(n) if satisfies(n, row, f)}
        got = [canonical_code(g) for g in enumerate_graphs(n, f)]
        assert len(got) == len(set(got))
        assert set(got) == set(want), (n, f)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_orbit_stabiliser_identity(n):
    # labelled count = sum of n!/|Aut| over classes
    from math import factorial

    total = sum(factorial(n) // oracles.automorphism_count(n, g.edges()) for g in enumerate_graphs(n))
    assert total == 2 ** (n * (n - 1) // 2)
    conn = sum(factorial(n) // oracles.automorphism_count(n, g.edges()) for g in enumerate_graphs(n, CONNECTED))
    assert conn == {4: 38, 5: 728, 6: 26704}[n]


def test_class_counts_match_brute_canonical_forms():
    for n in range(1, 6):
        assert count_graphs(n) == oracles.brute_class_count(n)


def test_filter_soundness_at_8():
    f = GraphFilter(min_degree=3, connectivity_at_least=2)
    gs = list(enumerate_graphs(8, f))
    assert len(gs) == 2581
    for g in gs:
        assert min_degree(g) >= 3 and is_k_connected(g, 2)


def test_two_connected_counts_n9():
    assert count_graphs(9, GraphFilter(min_degree=3, connectivity_at_least=2)) == 84151
    assert count_graphs(9, GraphFilter(min_degree=4, connectivity_at_least=2)) == 15470


def test_partitions_cover_stream_exactly():
    f = GraphFilter(min_degree=2)
    whole = sorted(canonical_code(g) for g in enumerate_graphs(8, f))
    pieces = []
    for part in range(5):
        for _, rows in iter_batches(8, f, part=part, parts=5):
            pieces.extend(code_from_rows(r, 8) for r in rows)
    assert sorted(pieces) == whole


def test_resume_from_start_index():
    f = GraphFilter(min_degree=1)
    tags = [(t, rows.shape[0]) for t, rows in iter_batches(8, f)]
    cut = tags[len(tags) // 2][0]
    rest = sum(rows.shape[0] for _, rows in iter_batches(8, f, start=cut))
    assert rest == sum(c for t, c in tags if t >= cut)


def test_cap():
    with pytest.raises(GraphError):
        next(iter(enumerate_graphs(ENUM_CAP + 1)))


def test_every_emitted_graph_satisfies_filter_to_7():
    f = GraphFilter(min_degree=2, connectivity_at_least=2, bipartite="forbid")
    for n in range(3, 8):
        for g in enumerate_graphs(n, f):
            assert bipartition(g) is None
            assert min_degree(g) >= 2 and is_k_connected(g, 2)
    f = GraphFilter(girth_at_least=5, min_degree=2)
    for g in enumerate_graphs(9, f):
        assert girth(g) >= 5
        assert all(L >= 5 for L in cycle_spectrum(g).lengths)
