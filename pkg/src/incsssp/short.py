"""Exact incremental shortest paths for small distances.

Distances below a fixed cap are maintained exactly: an insertion that
improves its head triggers a plain Dijkstra-style propagation (no bucket
slack) truncated at the cap.  With integer weights ≥ 1 each vertex can
improve at most cap times, so total work stays linear in n·cap + m without
any of the rounding machinery used for the long ranges.
"""

import heapq
from fractions import Fraction
from math import inf

from .det import bounded_dijkstra
from .lazy import EstimateTable


class ShortDistanceTree:
    """Exact distance estimates for every vertex with d(s, v) < cap."""

    def __init__(self, graph, source: int, cap: int, on_decrease=None):
        self.graph = graph
        self.source = source
        self.cap = cap
        # granularity 1 is unused by exact relaxation; the table is reused
        # for its storage, parents, and decrease notifications.
        self.table = EstimateTable(graph, source, cap, Fraction(1), on_decrease)
        self.relaxations = 0
        self.rebuild()

    def rebuild(self) -> None:
        dist, parent = bounded_dijkstra(self.graph, self.source, self.cap)
        self.table.work += self.graph.edge_count + self.graph.n
        self.table.assign_exact(dist, parent)

    def insert(self, u: int, v: int, w: int) -> None:
        """Process one edge insertion, keeping sub-cap distances exact."""
        t = self.table
        t.work += 1
        du = t.dhat[u]
        if du == inf:
            return
        cand = du + w
        if cand >= self.cap or cand >= t.dhat[v]:
            return
        t._set(v, cand, u)
        self.relaxations += 1
        self._propagate(v)

    def _propagate(self, start: int) -> None:
        t = self.table
        dhat = t.dhat
        adj = self.graph._adj
        cap = self.cap
        heap = [(dhat[start], start)]
        push = heapq.heappush
        pop = heapq.heappop
        while heap:
            d, u = pop(heap)
            if d > dhat[u]:
                continue
            t.work += 1
            for v, w in adj[u]:
                t.work += 1
                nd = d + w
                if nd < cap and nd < dhat[v]:
                    t._set(v, nd, u)
                    self.relaxations += 1
                    push(heap, (nd, v))

    def estimate(self, v: int):
        d = self.table.dhat[v]
        return inf if d == inf else d
