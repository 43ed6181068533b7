"""Randomized per-range structure with a hidden twin table.

Two estimate tables are maintained for each range: a visible one that
answers every query, and a hidden one whose state (and the random choices
driving it) is never exposed.  Insertions update both through the same
synchronized-propagation step.  Whenever a phase fills up or the hidden
potential Σ d̂ drops far enough, a global fixing phase runs: the tables are
synchronized to their pointwise minimum, the potential snapshot is taken,
random distance windows are sampled, and one propagation pass over the
sampled vertices runs on the hidden table only.  Keeping the sampled
windows hidden is what lets query answers reveal nothing an adaptive
adversary can use before the next synchronization.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import inf

import numpy as np

from .det import bounded_dijkstra, insert_step
from .intmath import ceil_cbrt, ceil_frac, floor_cbrt
from .lazy import EstimateTable


@dataclass(frozen=True)
class FixingSample:
    """Window indices drawn by one fixing phase (diagnostic record)."""
    indices: tuple
    window_width: Fraction
    iteration_count: int


class RandomizedRange:
    """Twin-table structure for one distance range [τ, 2τ).

    ``rng`` must be a numpy Generator seeded from the frontend; its draws
    are the only randomness used.  The hidden table has no public accessor:
    all answers come from :meth:`visible_estimate`.
    """

    def __init__(self, graph, source: int, tau: int, eps: Fraction,
                 m_budget: int, lg_n: int, rng, iter_mult: Fraction = Fraction(1),
                 on_visible_decrease=None, record_samples: bool = False):
        self.graph = graph
        self.source = source
        self.tau = tau
        self.eps = eps
        m_cbrt = ceil_cbrt(m_budget)
        self.m_cbrt = m_cbrt
        self.B = max(1, floor_cbrt(m_budget))
        self.delta = Fraction(tau, m_cbrt)
        eps_delta = eps * self.delta
        self.cap = ceil_frac((2 + 200 * lg_n * eps) * tau) + 1   # maximum estimate
        self.threshold = Fraction(eps * m_cbrt * tau, 4)
        self.max_window_index = max(
            0, ceil_frac(2 * m_cbrt + 200 * eps * m_cbrt * lg_n - 8))
        self.iterations = max(1, ceil_frac(Fraction(2000 * lg_n) / eps * iter_mult))
        self.rng = rng
        self.record_samples = record_samples
        self.sample_history: list[FixingSample] = []
        self.fixing_phases = 0
        self.fixing_log: list[int] = []   # insertion count at each phase
        self.b = 0
        self.insertions_seen = 0

        self.ds = EstimateTable(graph, source, self.cap, eps_delta,
                                on_decrease=on_visible_decrease)
        self._hidden = EstimateTable(graph, source, self.cap, eps_delta,
                                     on_decrease=self._on_hidden_decrease)
        self.phi = 0
        self._init_exact()

    # -- potential tracking ---------------------------------------------

    def _hidden_value(self, d) -> int:
        return self.cap if d == inf else d

    def _on_hidden_decrease(self, v, old, new):
        self.phi -= self._hidden_value(old) - self._hidden_value(new)

    def potential_scan(self) -> int:
        """Full-scan Σ d̂ over the hidden table (CAP counted as the cap)."""
        cap = self.cap
        return sum(cap if d == inf else d for d in self._hidden.dhat)

    # -- lifecycle -------------------------------------------------------

    def _init_exact(self) -> None:
        """Exact initialization; counts as a fixing phase with no sampling."""
        dist, parent = bounded_dijkstra(self.graph, self.source, self.cap)
        self.ds.assign_exact(dist, parent)
        self._hidden.assign_exact(dist, parent)
        self.phi = self.potential_scan()
        self.phi_snapshot = self.phi
        self.b = 0
        self.ds.reset_phase()
        self._hidden.reset_phase()
        self.ds.changed.clear()
        self._hidden.changed.clear()

    def insert(self, u: int, v: int, w: int) -> None:
        self.b += 1
        self.insertions_seen += 1
        insert_step(self.ds, u, v, w, self.b, sync=True)
        insert_step(self._hidden, u, v, w, self.b, sync=True)
        while self.needs_fixing():
            self.run_fixing_phase()

    def needs_fixing(self) -> bool:
        return self.b >= self.B or (self.phi_snapshot - self.phi) >= self.threshold

    def run_fixing_phase(self) -> None:
        ds, hid = self.ds, self._hidden
        # synchronize to the pointwise minimum, parents following the winner
        for v in ds.changed | hid.changed:
            a, h = ds.dhat[v], hid.dhat[v]
            if a < h:
                hid._set(v, a, ds.parent[v])
            elif h < a:
                ds._set(v, h, hid.parent[v])
        ds.changed.clear()
        hid.changed.clear()

        self.phi_snapshot = self.phi   # potential reference point

        draws = self.rng.integers(0, self.max_window_index + 1,
                                  size=self.iterations)
        if self.record_samples:
            self.sample_history.append(FixingSample(
                tuple(int(i) for i in draws), 8 * self.delta, self.iterations))
        v_star = self._window_union(draws)
        hid.partial_dijkstra(v_star)

        self.b = 0
        ds.reset_phase()
        hid.reset_phase()
        self.fixing_phases += 1
        self.fixing_log.append(self.insertions_seen)

    def _window_union(self, draws) -> set[int]:
        """Vertices of the hidden table with d̂ in [iδ, (i+8)δ) for any drawn i.

        Membership is decided in exact integer arithmetic: with δ = τ/M,
        d̂ ∈ [iδ, (i+8)δ)  ⟺  iτ ≤ d̂·M < (i+8)τ.
        """
        m_cbrt = self.m_cbrt
        sentinel = 1 << 62
        vals = np.fromiter(
            (d * m_cbrt if d != inf else sentinel for d in self._hidden.dhat),
            dtype=np.int64, count=self.graph.n)
        order = np.argsort(vals, kind="stable")
        svals = vals[order]
        idx = np.unique(np.asarray(draws, dtype=np.int64))
        los = np.searchsorted(svals, idx * self.tau, side="left")
        his = np.searchsorted(svals, (idx + 8) * self.tau, side="left")
        out: set[int] = set()
        for lo, hi in zip(los, his):
            if hi > lo:
                out.update(int(x) for x in order[lo:hi])
        return out

    # -- queries ----------------------------------------------------------

    def visible_estimate(self, v: int):
        """Estimate from the visible table only; CAP reported as math.inf."""
        d = self.ds.dhat[v]
        return inf if d == inf else d

    def audit_tables(self):
        """(label, table) pairs for invariant audits.  Harness use only;
        query answers never flow through this."""
        return (("visible", self.ds), ("hidden", self._hidden))
