"""Per-range structure with power-of-two synchronized propagation.

Each range owns the distances in [τ, 2τ).  Insertions are processed in
phases of at most B; the b-th insertion of a phase batches every vertex
touched since step (k−1)·2^j (where b = k·2^j with j maximal) into one
propagation call, which limits error build-up on surviving path segments
to O(εδ·lg B) per phase.  A full distance-bounded rebuild restores exact
estimates between phases.

A baseline mode replaces the batch with just the head of the inserted edge
(when its relaxation fired), reproducing the per-edge propagation scheme
this design improves on; it exists for contrast experiments only.
"""

import heapq
from fractions import Fraction
from math import inf

from .errors import PhaseFull
from .lazy import CAP, EstimateTable


def batch_index(b: int) -> tuple[int, int]:
    """Largest j with 2^j | b, and k = b / 2^j."""
    if b < 1:
        raise ValueError("batch index requires b >= 1")
    j = (b & -b).bit_length() - 1
    return j, b >> j


def insert_step(table: EstimateTable, u: int, v: int, w: int, b: int,
                sync: bool = True) -> set[int]:
    """One insertion-processing step at in-phase index b.

    Bucket-tests the new edge, gathers the synchronized batch, propagates,
    and stamps everything the propagation touched with time b.
    """
    relaxed = table.try_relax(u, v, w)
    if relaxed:
        table.mark_touched(v, b)
    if sync:
        j, k = batch_index(b)
        v_input = table.touched_in_window((k - 1) << j, b)
    else:
        v_input = {v} if relaxed else set()
    touched = table.partial_dijkstra(v_input)
    for x in touched:
        table.mark_touched(x, b)
    return touched


def bounded_dijkstra(graph, source: int, cap: int) -> tuple[list, list]:
    """Exact distances from ``source``, abandoning keys ≥ cap.

    Returns (dist, parent) with out-of-range vertices at CAP.  Ties broken
    by vertex id for reproducible parents.
    """
    n = graph.n
    dist = [CAP] * n
    parent = [None] * n
    dist[source] = 0
    adj = graph._adj
    heap = [(0, source)]
    done = [False] * n
    push = heapq.heappush
    pop = heapq.heappop
    while heap:
        d, u = pop(heap)
        if done[u] or d > dist[u]:
            continue
        done[u] = True
        for v, w in adj[u]:
            nd = d + w
            if nd < cap and nd < dist[v]:
                dist[v] = nd
                parent[v] = u
                push(heap, (nd, v))
    return dist, parent


class DeterministicRange:
    """Deterministic structure for one distance range [τ, 2τ).

    Estimates are kept up to ``cap`` and reported as unreachable beyond it.
    The owner must call :meth:`rebuild` once the phase is full; an insertion
    into a full phase raises :class:`PhaseFull`.
    """

    def __init__(self, graph, source: int, tau: int, eps_delta: Fraction,
                 phase_length: int, cap: int, sync: bool = True,
                 on_decrease=None):
        if phase_length < 1:
            raise ValueError("phase length must be >= 1")
        self.graph = graph
        self.source = source
        self.tau = tau
        self.eps_delta = eps_delta
        self.B = phase_length
        self.cap = cap
        self.sync = sync
        self.b = 0
        self.rebuilds = 0
        self.table = EstimateTable(graph, source, cap, eps_delta, on_decrease)
        self.rebuild()

    def insert(self, u: int, v: int, w: int) -> set[int]:
        if self.b >= self.B:
            raise PhaseFull(f"phase of length {self.B} already full")
        self.b += 1
        return insert_step(self.table, u, v, w, self.b, self.sync)

    def phase_full(self) -> bool:
        return self.b >= self.B

    def rebuild(self) -> None:
        """Restore exact estimates (clamped at cap) and reset the phase."""
        dist, parent = bounded_dijkstra(self.graph, self.source, self.cap)
        self.table.work += self.graph.edge_count + self.graph.n
        self.table.assign_exact(dist, parent)
        self.b = 0
        self.table.reset_phase()
        self.rebuilds += 1

    def estimate(self, v: int):
        """Current estimate; CAP (reported as math.inf) means out of range."""
        d = self.table.dhat[v]
        return inf if d == inf else d
