import random
from fractions import Fraction
from math import inf

import pytest

from incsssp import (DeterministicRange, Graph, PhaseFull, batch_index,
                     bounded_dijkstra, dijkstra)
from incsssp.intmath import ceil_log2
from tests.conftest import random_graph


def test_batch_index_values():
    assert batch_index(4) == (2, 1)
    assert batch_index(6) == (1, 3)
    assert batch_index(7) == (0, 7)
    assert batch_index(1) == (0, 1)
    assert batch_index(8) == (3, 1)


def test_batch_index_reconstructs():
    for b in range(1, 200):
        j, k = batch_index(b)
        assert k * (1 << j) == b
        assert b % (1 << j) == 0
        assert j == 0 or b % (1 << (j + 1)) != 0


def grow_range(n, m, w_max, seed, gran=Fraction(2), B=8, cap=10 ** 6,
               sync=True):
    """Random insertion run against one stand-alone range; yields each state."""
    rng = random.Random(seed)
    g = Graph(n, w_max)
    r = DeterministicRange(g, 0, tau=1, eps_delta=gran, phase_length=B,
                           cap=cap, sync=sync)
    seen = set()
    inserted = 0
    while inserted < m:
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        if (u, v) in seen:
            continue
        seen.add((u, v))
        w = rng.randint(1, w_max)
        if r.phase_full():
            r.rebuild()
        g.insert_edge(u, v, w)
        r.insert(u, v, w)
        inserted += 1
        yield g, r


def edge_invariant_holds(g, r):
    t = r.table
    eps_delta = t.gran
    for u in range(g.n):
        du = t.dhat[u]
        if du == inf:
            continue
        for (v, w) in g.out_edges(u):
            if min(t.dhat[v], r.cap) > du + w + eps_delta:
                return False
    return True


@pytest.mark.parametrize("seed", range(8))
def test_edge_invariant_after_every_insertion(seed):
    for g, r in grow_range(14, 50, 6, seed):
        assert edge_invariant_holds(g, r)


def test_phase_full_raises():
    g = Graph(4, 5)
    r = DeterministicRange(g, 0, 1, Fraction(1), phase_length=2, cap=100)
    g.insert_edge(0, 1, 1)
    r.insert(0, 1, 1)
    g.insert_edge(1, 2, 1)
    r.insert(1, 2, 1)
    g.insert_edge(2, 3, 1)
    with pytest.raises(PhaseFull):
        r.insert(2, 3, 1)
    r.rebuild()
    r.insert(2, 3, 1)
    assert r.b == 1


@pytest.mark.parametrize("seed", range(10))
def test_rebuild_matches_oracle_clamped(seed):
    g = random_graph(16, 70, 8, seed=seed)
    cap = 20
    r = DeterministicRange(g, 0, 8, Fraction(1, 2), phase_length=4, cap=cap)
    truth = dijkstra(g, 0)
    for v in range(16):
        want = truth.d[v] if truth.d[v] < cap else inf
        assert r.table.dhat[v] == want


def test_rebuild_on_empty_graph():
    g = Graph(5, 3)
    r = DeterministicRange(g, 0, 2, Fraction(1), phase_length=2, cap=50)
    assert r.table.dhat[0] == 0
    assert all(r.table.dhat[v] == inf for v in range(1, 5))


def test_rebuild_restores_zero_slack():
    g = random_graph(12, 40, 4, seed=9)
    r = DeterministicRange(g, 0, 4, Fraction(2), phase_length=4, cap=10 ** 6)
    truth = dijkstra(g, 0)
    for v in range(12):
        if truth.d[v] == inf or v == 0:
            continue
        path = [v]
        while path[-1] != 0:
            path.append(truth.tree_parent[path[-1]])
        path.reverse()
        assert r.table.slack(path) <= 0


def test_no_profit_insertion_returns_empty():
    g = Graph(3, 2000)
    g.insert_edge(0, 1, 4)
    r = DeterministicRange(g, 0, 2, Fraction(4), phase_length=4, cap=10 ** 6)
    # candidate 0+900 exceeds nothing useful: head was unreachable, gets the
    # new value, so pick an edge whose test fails instead: 1 -> 2 never
    # relaxes because dhat[1]=4 and 4+997 stays above any bucket of interest
    g.insert_edge(1, 2, 997)
    touched_first = r.insert(1, 2, 997)
    assert r.table.dhat[2] == 4 + 997
    # second, parallel-free edge offering the same bucket: no change at all
    g.insert_edge(0, 2, 1001)
    before = list(r.table.dhat)
    touched = r.insert(0, 2, 1001)
    assert touched == set()
    assert r.table.dhat == before


def test_entry_count_bound_per_decrease():
    # one bucket-crossing decrease puts a vertex into at most ⌈lg B⌉ + 1
    # batches before the next rebuild
    B = 16
    g = Graph(20, 6)
    r = DeterministicRange(g, 0, 1, Fraction(2), phase_length=B, cap=10 ** 6)
    rng = random.Random(4)

    memberships = {v: 0 for v in range(20)}
    touches = {v: 0 for v in range(20)}
    window = r.table.touched_in_window
    mark = r.table.mark_touched

    def counting_window(lo, hi):
        got = window(lo, hi)
        for v in got:
            memberships[v] += 1
        return got

    def counting_mark(v, b):
        touches[v] += 1
        mark(v, b)

    r.table.touched_in_window = counting_window
    r.table.mark_touched = counting_mark

    seen = set()
    inserted = 0
    limit = ceil_log2(B) + 1
    while inserted < 60:
        u = rng.randrange(20)
        v = rng.randrange(19)
        if v >= u:
            v += 1
        if (u, v) in seen:
            continue
        seen.add((u, v))
        if r.phase_full():
            r.rebuild()
            memberships = {v: 0 for v in range(20)}
            touches = {v: 0 for v in range(20)}
        w = rng.randint(1, 6)
        g.insert_edge(u, v, w)
        r.insert(u, v, w)
        inserted += 1
        for x in range(20):
            assert memberships[x] <= limit * touches[x]


def test_baseline_mode_propagates_only_from_inserted_head():
    g = Graph(4, 10)
    g.insert_edge(1, 2, 1)
    g.insert_edge(2, 3, 1)
    r = DeterministicRange(g, 0, 1, Fraction(1), phase_length=8, cap=1000,
                           sync=False)
    g.insert_edge(0, 1, 1)
    touched = r.insert(0, 1, 1)
    assert r.table.dhat[1] == 1
    assert touched == {2, 3}


def test_bounded_dijkstra_abandons_at_cap():
    g = Graph(4, 10)
    g.insert_edge(0, 1, 3)
    g.insert_edge(1, 2, 3)
    g.insert_edge(2, 3, 3)
    dist, parent = bounded_dijkstra(g, 0, cap=7)
    assert dist == [0, 3, 6, inf]
    assert parent[2] == 1 and parent[3] is None
