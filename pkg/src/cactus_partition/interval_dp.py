"""Interval-compressed dynamic program (polynomial-time decision).

The tuple sets of the pseudo-polynomial solver hold up to ``upper`` many
weights per cluster count.  With ``gap = upper - lower``, weights that
are at most ``gap`` apart are interchangeable for feasibility purposes:
whenever an interval of gap-consecutive achievable weights meets the
window ``[lower, upper]``, one of its members does too.  Each per-count
weight set is therefore compressed into its maximal gap-consecutive runs,
stored as intervals, of which there are at most k for count k.

Combination works directly on intervals: keeping the child cluster
separate requires the child interval to meet the window, merging adds
interval endpoints (guarded by the low sum fitting under the upper
bound).  Freshly combined intervals may interfere (come within ``gap`` of
each other), so every combination is followed by the order-independent
merge that repeatedly joins interfering intervals.

Every interval entry remembers how it was produced: the pair of entries
it was combined from, the entries it was merged from, or the cycle
configuration it came out of.  Reconstruction searches these records.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dp_core import (
    ProblemParams,
    _check_leaf_weights,
    run_tree_dp,
    trivially_infeasible,
)
from .errors import IntervalCountError
from .graph_model import CactusGraph
from .tree_rep import CactusTree, build_tree

Interval = tuple[int, int]


def intervals_of(values, gap: int) -> list[Interval]:
    """Intervals of the maximal gap-consecutive runs of an integer set."""
    if gap < 0:
        raise ValueError("gap must be non-negative")
    xs = sorted(set(values))
    if not xs:
        return []
    runs = []
    lo = hi = xs[0]
    for x in xs[1:]:
        if x - hi <= gap:
            hi = x
        else:
            runs.append((lo, hi))
            lo = hi = x
    runs.append((lo, hi))
    return runs


def merge(intervals, gap: int) -> list[Interval]:
    """Join interfering intervals until none remain.

    Two intervals interfere when the later one starts at most ``gap``
    after the earlier one ends.  The result is independent of the input
    order: sorting by low end first makes the left-to-right sweep find
    exactly the maximal interfering groups.
    """
    ivs = sorted(intervals)
    out: list[Interval] = []
    for lo, hi in ivs:
        if out and lo - out[-1][1] <= gap:
            prev_lo, prev_hi = out[-1]
            out[-1] = (prev_lo, max(prev_hi, hi))
        else:
            out.append((lo, hi))
    return out


def interval_oplus(a, b, params: ProblemParams):
    """Combine two interval sets across an edge (pre-merge form).

    ``a`` and ``b`` map cluster counts to interval lists.  The result is
    the raw combination before interfering intervals are merged; callers
    apply :func:`merge` per count to normalise it.
    """
    lower, upper, p = params.lower, params.upper, params.num_clusters
    out: dict[int, list[Interval]] = {}
    for k2, ivs_b in sorted(b.items()):
        for (b_lo, b_hi) in sorted(ivs_b):
            feasible = b_lo <= upper and b_hi >= lower
            for k1, ivs_a in sorted(a.items()):
                for (a_lo, a_hi) in sorted(ivs_a):
                    if feasible and k1 + k2 <= p:
                        out.setdefault(k1 + k2, []).append((a_lo, a_hi))
                    if a_lo + b_lo <= upper and k1 + k2 - 1 <= p:
                        out.setdefault(k1 + k2 - 1, []).append(
                            (a_lo + b_lo, a_hi + b_hi)
                        )
    return {k: sorted(set(ivs)) for k, ivs in out.items()}


@dataclass(eq=False)
class IEntry:
    """One stored interval with the records of how it was produced.

    Sources are tagged tuples:

    * ``("leaf", v)``: base case, the interval is ``[w(v), w(v)]``.
    * ``("step", branch, a_entry, b_entry, edge)``: combined from two
      entries across ``edge`` by cutting (branch "cut") or merging
      clusters (branch "merge").
    * ``("sub", entry)``: constituent swallowed by an interval merge.
    * ``("cfg", j, absent_edge, entry)``: produced inside cycle
      configuration ``j`` whose absent edge is recorded for the cut set.

    All producing combinations are kept, not just one witness: a merged
    interval only promises that some member weight is achievable, and
    reconstruction may need to try several constituents.
    """

    lo: int
    hi: int
    sources: tuple

    def intersects(self, lo: int, hi: int) -> bool:
        return self.lo <= hi and self.hi >= lo


class IntervalAlgebra:
    """Interval states for the shared tree traversal: ``{k: (IEntry, ...)}``."""

    def __init__(self, graph: CactusGraph, params: ProblemParams):
        self.graph = graph
        self.params = params

    def base(self, v):
        w = self.graph.weight[v]
        return {1: (IEntry(w, w, (("leaf", v),)),)}

    def combine(self, a, b, edge, step):
        lower, upper = self.params.lower, self.params.upper
        p = self.params.num_clusters
        raw: dict[tuple[int, int, int], list] = {}
        for k2, ents_b in sorted(b.items()):
            for eb in ents_b:
                feasible = eb.lo <= upper and eb.hi >= lower
                for k1, ents_a in sorted(a.items()):
                    for ea in ents_a:
                        if feasible and k1 + k2 <= p:
                            raw.setdefault((k1 + k2, ea.lo, ea.hi), []).append(
                                ("step", "cut", ea, eb, edge)
                            )
                        if ea.lo + eb.lo <= upper and k1 + k2 - 1 <= p:
                            raw.setdefault(
                                (k1 + k2 - 1, ea.lo + eb.lo, ea.hi + eb.hi), []
                            ).append(("step", "merge", ea, eb, edge))
        return self._merged(raw)

    def lift(self, state, step, charged):
        return state

    def strip(self, state, step):
        return state

    def union_configs(self, configs, cycle):
        raw: dict[tuple[int, int, int], list] = {}
        for j, step, state in configs:
            for k, entries in sorted(state.items()):
                for e in entries:
                    raw.setdefault((k, e.lo, e.hi), []).append(
                        ("cfg", j, step.absent_edge, e)
                    )
        return self._merged(raw)

    def _merged(self, raw):
        per_k: dict[int, list[IEntry]] = {}
        for (k, lo, hi), sources in raw.items():
            per_k.setdefault(k, []).append(IEntry(lo, hi, tuple(sources)))
        gap = self.params.gap
        out = {}
        for k, entries in sorted(per_k.items()):
            entries.sort(key=lambda e: (e.lo, e.hi))
            merged: list[IEntry] = []
            group = [entries[0]]
            lo, hi = entries[0].lo, entries[0].hi
            for e in entries[1:]:
                if e.lo - hi <= gap:
                    group.append(e)
                    hi = max(hi, e.hi)
                else:
                    merged.append(self._flush(group, lo, hi))
                    group = [e]
                    lo, hi = e.lo, e.hi
            merged.append(self._flush(group, lo, hi))
            if len(merged) > k:
                raise IntervalCountError(
                    f"{len(merged)} intervals stored for cluster count {k}: "
                    f"{[(e.lo, e.hi) for e in merged]}"
                )
            out[k] = tuple(merged)
        return out

    @staticmethod
    def _flush(group, lo, hi):
        if len(group) == 1:
            return group[0]
        return IEntry(lo, hi, tuple(("sub", g) for g in group))


def _state_intervals(state) -> dict[int, tuple[Interval, ...]]:
    return {k: tuple((e.lo, e.hi) for e in entries) for k, entries in state.items()}


def interval_subtree_sets(tree: CactusTree, params: ProblemParams):
    """All compressed interval sets, keyed by ``(node, children_included)``."""
    _check_leaf_weights(tree.graph, params)
    states = run_tree_dp(tree, IntervalAlgebra(tree.graph, params))
    return {ctx: _state_intervals(state) for ctx, state in states.items()}


def interval_root_state(tree: CactusTree, params: ProblemParams):
    """Raw interval state (with records) of the whole tree."""
    _check_leaf_weights(tree.graph, params)
    states = run_tree_dp(tree, IntervalAlgebra(tree.graph, params))
    return states[(tree.root, tree.full_index(tree.root))]


def decide_p_partition_poly(
    graph: CactusGraph, params: ProblemParams, root: str | None = None
) -> bool:
    """Interval-compressed equivalent of ``decide_p_partition``."""
    if trivially_infeasible(graph, params):
        return False
    tree = build_tree(graph, root)
    state = interval_root_state(tree, params)
    entries = state.get(params.num_clusters, ())
    return any(e.intersects(params.lower, params.upper) for e in entries)
