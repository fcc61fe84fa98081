from functools import lru_cache
from itertools import combinations

import numpy as np
import pytest

import oracles
from cyclespec import constructions as C
from cyclespec.graph import GraphError, build_graph, canonical_code, is_isomorphic
from cyclespec.graph6 import parse_graph6
from cyclespec.spectrum import cycle_spectrum
from cyclespec.turan import (
    TURAN_CAP,
    bollobas_bound,
    class_has_even,
    closed_form,
    free_graphs_with_edges,
    graphs_with_edges_missing_residue,
    max_edges_without,
    turan_table,
)


@lru_cache(maxsize=None)
def _labelled(n):
    all_edges = list(oracles.labelled_graphs(n))
    masks = np.array([oracles.edge_bitmask(n, e) for e in all_edges], dtype=np.uint64)
    cyc = oracles.cycle_length_masks(n, masks) if n >= 3 else np.zeros(len(masks), np.uint64)
    return all_edges, [oracles.mask_to_set(int(c)) for c in cyc]


def brute_turan(n, ell, k):
    """Maximum edges and extremal classes over every labelled graph."""
    best, codes = -1, set()
    for edges, lengths in zip(*_labelled(n)):
        if any(L % k == ell for L in lengths):
            continue
        if len(edges) > best:
            best, codes = len(edges), set()
        if len(edges) == best:
            codes.add(oracles.brute_canonical(n, edges))
    return best, codes


CASES = [(n, ell, k) for n in range(1, 7) for k in range(1, 7) for ell in range(k)]


@pytest.mark.parametrize("n, ell, k", CASES)
def test_matches_labelled_brute_force(n, ell, k):
    res = max_edges_without(n, ell, k, all_extremal=True)
    want, codes = brute_turan(n, ell, k)
    assert res.max_edges == want
    got = {oracles.brute_canonical(n, parse_graph6(s).edges()) for s in res.extremal}
    assert got == codes


def test_examples():
    res = max_edges_without(7, 0, 3, all_extremal=True)
    assert res.max_edges == 10
    assert any(is_isomorphic(parse_graph6(s), C.complete_bipartite(2, 5)) for s in res.extremal)
    assert max_edges_without(9, 0, 4).max_edges == 12
    res = max_edges_without(8, 0, 5, all_extremal=True)
    assert res.max_edges == 16
    assert canonical_code(C.complete_bipartite(4, 4)) in {canonical_code(parse_graph6(s)) for s in res.extremal}


def test_witness_is_free_and_extremal():
    for n, ell, k in [(7, 0, 3), (8, 2, 3), (8, 2, 4), (9, 0, 4)]:
        res = max_edges_without(n, ell, k)
        g = parse_graph6(res.lower_bound_witness)
        assert g.n == n and g.edge_count == res.max_edges
        assert not any(L % k == ell for L in cycle_spectrum(g).lengths)


def test_rejects():
    with pytest.raises(ValueError):
        max_edges_without(5, 3, 3)
    with pytest.raises(ValueError):
        max_edges_without(0, 0, 3)
    with pytest.raises(GraphError):
        max_edges_without(TURAN_CAP + 1, 0, 3)


def test_table_k3_ell0():
    rows = turan_table(3, 0, range(3, 9))
    assert [r["max_edges"] for r in rows] == [2 * (n - 2) for n in range(3, 9)]
    assert all(r["match"] is True for r in rows)


def test_table_k3_ell2():
    rows = turan_table(3, 2, range(6, 9))
    assert [r["max_edges"] for r in rows] == [3 * (n - 3) for n in range(6, 9)]
    assert all(r["match"] is True for r in rows)


@pytest.mark.xfail(strict=True, reason="K_4 plus a pendant vertex: 7 edges, cycle lengths {3, 4}")
def test_table_k3_ell2_at_five():
    (row,) = turan_table(3, 2, range(5, 6))
    assert row["max_edges"] == 6


def test_k3_ell2_at_five_is_flagged():
    (row,) = turan_table(3, 2, range(5, 6))
    assert row["max_edges"] == 7 == brute_turan(5, 2, 3)[0]
    assert row["match"] is False and row["flag"] == "MISMATCH"
    k4_pendant = build_graph(5, list(C.complete(4).edges()) + [(0, 4)])
    assert set(cycle_spectrum(k4_pendant).lengths) == {3, 4}


def test_table_small_order_regime_is_flagged():
    rows = turan_table(5, 0, range(5, 7))
    for r in rows:
        assert r["formula"] is None and r["relation"].startswith("n < 2k-3 regime")
        # below 2k the class 0 mod k is just {k}
        assert r["ex_single_length"] == r["max_edges"]
        assert r["max_edges"] == brute_turan(r["n"], 0, 5)[0]


def test_closed_forms_agree_where_stated_equal():
    for (ell, k) in [(0, 3), (0, 4), (2, 3), (0, 5)]:
        for n in range(3, 10 if k < 5 else 9):
            value, rel = closed_form(n, ell, k)
            if value is None or (n, ell, k) == (5, 2, 3):
                continue
            got = max_edges_without(n, ell, k).max_edges
            if rel == "equal":
                assert got == value, (n, ell, k)
            else:
                assert got <= value, (n, ell, k)


@pytest.mark.parametrize("ell, k", [(0, 3), (1, 3), (2, 3), (0, 4), (2, 4), (1, 4)])
def test_monotone_in_n(ell, k):
    # a pendant vertex adds an edge and no cycle
    vals = [max_edges_without(n, ell, k).max_edges for n in range(2, 9)]
    assert all(b >= a + 1 for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("ell, k", [(0, 3), (2, 3), (0, 4), (2, 4), (1, 3), (0, 5)])
def test_bollobas_bound(ell, k):
    assert class_has_even(ell, k)
    for n in range(1, 9):
        assert max_edges_without(n, ell, k).max_edges <= bollobas_bound(n, k)


@pytest.mark.parametrize("ell, k", [(1, 2), (1, 4), (3, 4)])
def test_odd_only_classes_have_bipartite_floor(ell, k):
    assert not class_has_even(ell, k)
    for n in range(2, 9):
        assert max_edges_without(n, ell, k).max_edges >= (n * n) // 4


@pytest.mark.parametrize("n, ell, k", [(6, 0, 3), (7, 2, 4), (7, 1, 3), (8, 0, 4)])
def test_extremal_graphs_are_edge_maximal(n, ell, k):
    for s in max_edges_without(n, ell, k, all_extremal=True).extremal:
        g = parse_graph6(s)
        for u, v in combinations(range(n), 2):
            if not g.has_edge(u, v):
                assert any(L % k == ell for L in cycle_spectrum(g.with_edge(u, v)).lengths)


@pytest.mark.parametrize("n, ell, k", [(6, 0, 3), (7, 0, 3), (8, 0, 3), (7, 2, 4), (8, 0, 4)])
def test_second_route_counts(n, ell, k):
    res = max_edges_without(n, ell, k, all_extremal=True)
    e = res.max_edges
    assert free_graphs_with_edges(n, ell, k, e + 1) == 0
    assert free_graphs_with_edges(n, ell, k, e) == len(res.extremal)
    total, missing = graphs_with_edges_missing_residue(n, ell, k, e + 1)
    assert total > 0 and missing == 0
    total, missing = graphs_with_edges_missing_residue(n, ell, k, e)
    assert missing == len(res.extremal)


def test_every_17_edge_graph_on_8_vertices_has_0_mod_5_cycle():
    assert free_graphs_with_edges(8, 0, 5, 17) == 0
    total, missing = graphs_with_edges_missing_residue(8, 0, 5, 17)
    assert missing == 0
    # classes on 8 vertices with 17 edges, i.e. complements of those with 11
    assert total == 980
