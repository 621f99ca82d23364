"""Rebuild actual partitions from annotated solver runs.

Both solvers can remember, for every stored tuple or interval, which
combination produced it.  Reconstruction walks those records from the
root downwards and collects the edges cut along the way; deleting the
collected edges from the graph yields the clusters.

For the tuple solver one witness per tuple suffices: tuple sets are
exact, so any recorded combination extends to a valid partition and the
walk is a straight descent.

The interval solver is trickier.  A stored interval only guarantees that
some member weight is achievable, so the walk keeps a window of weights
that would still complete a valid partition and searches the recorded
alternatives (merge constituents, producing pairs, cycle configurations)
depth-first.  Descending into a cluster merge with child interval
``[b, b']`` widens the child side: the parent side is searched within
``[lo - b', hi - b]`` and, once its exact weight x is fixed, the child
side must land in ``[lo - x, hi - x]``.  Completed clusters are searched
against the original weight window.  The first solution in deterministic
record order is returned, so reconstruction is reproducible.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .dp_core import (
    ProblemParams,
    TupleAlgebra,
    run_tree_dp,
)
from .errors import WeightExceedsUpperError, WitnessNotFoundError
from .graph_model import CactusGraph, Partition, canonicalize_partition
from .interval_dp import IntervalAlgebra
from .tree_rep import CactusTree, build_tree


@dataclass
class AnnotatedRun:
    """A solver run that kept records for backtracking."""

    tree: CactusTree
    params: ProblemParams
    algorithm: str
    states: dict
    root_state: dict

    @property
    def graph(self) -> CactusGraph:
        return self.tree.graph


def annotate(
    graph: CactusGraph | CactusTree,
    params: ProblemParams,
    algorithm: str = "tupleset",
    root: str | None = None,
) -> AnnotatedRun:
    """Run a solver with recording enabled.

    ``algorithm`` selects the tuple-set solver or the interval-compressed
    one; both produce states every stored element of which carries a
    record usable by :func:`reconstruct`.
    """
    tree = graph if isinstance(graph, CactusTree) else build_tree(graph, root)
    if tree.graph.max_weight > params.upper:
        raise WeightExceedsUpperError(
            f"vertex weight {tree.graph.max_weight} exceeds upper bound {params.upper}"
        )
    if algorithm == "tupleset":
        alg = TupleAlgebra(tree.graph, params)
    elif algorithm == "interval":
        alg = IntervalAlgebra(tree.graph, params)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    states = run_tree_dp(tree, alg)
    return AnnotatedRun(
        tree=tree,
        params=params,
        algorithm=algorithm,
        states=states,
        root_state=states[(tree.root, tree.full_index(tree.root))],
    )


def collect_cuts(state: dict, key) -> set:
    """Walk tuple records from ``state[key]`` and gather the cut edges.

    Shared by the tuple solver and the optimisation variants, whose
    records all have the same shape.  The absent edge of a cycle
    configuration is always included; when the whole cycle ends up in one
    cluster it is harmless and disappears during canonicalisation.
    """
    cuts: set = set()
    stack = [(state, key)]
    while stack:
        st, k = stack.pop()
        _aux, rec = st[k]
        tag = rec[0]
        if tag == "leaf":
            continue
        if tag == "step":
            _, branch, a_st, a_key, b_st, b_key, edge = rec
            if branch == "cut":
                cuts.add(edge)
            stack.append((a_st, a_key))
            stack.append((b_st, b_key))
        elif tag == "cfg":
            _, _j, absent, inner_st, inner_key = rec
            cuts.add(absent)
            stack.append((inner_st, inner_key))
        elif tag in ("lift", "strip"):
            _, inner_st, inner_key = rec
            stack.append((inner_st, inner_key))
        else:  # pragma: no cover - record shapes are fixed at build time
            raise WitnessNotFoundError(f"unknown record {tag!r}")
    return cuts


def _first(gen):
    for item in gen:
        return item
    return None


class _IntervalSearch:
    """Depth-first search over interval records with feasibility windows."""

    def __init__(self, graph: CactusGraph, params: ProblemParams):
        self.graph = graph
        self.params = params
        self._cluster_memo: dict[int, tuple | None] = {}

    def candidates(self, entry, lo: int, hi: int):
        """Yield ``(weight, cut_edges)`` realisations of ``entry`` in [lo, hi]."""
        if lo > hi or not entry.intersects(lo, hi):
            return
        for src in entry.sources:
            tag = src[0]
            if tag == "leaf":
                x = self.graph.weight[src[1]]
                if lo <= x <= hi:
                    yield (x, frozenset())
            elif tag == "sub":
                yield from self.candidates(src[1], lo, hi)
            elif tag == "cfg":
                _, _j, absent, inner = src
                for x, cuts in self.candidates(inner, lo, hi):
                    yield (x, cuts | {absent})
            else:  # ("step", branch, a_entry, b_entry, edge)
                _, branch, ea, eb, edge = src
                if branch == "cut":
                    done = self._completed_cluster(eb)
                    if done is None:
                        continue
                    _bx, bcuts = done
                    for x, cuts in self.candidates(ea, lo, hi):
                        yield (x, cuts | bcuts | {edge})
                else:
                    a_lo = max(0, lo - eb.hi)
                    a_hi = hi - eb.lo
                    for ax, acuts in self.candidates(ea, a_lo, a_hi):
                        for bx, bcuts in self.candidates(
                            eb, max(0, lo - ax), hi - ax
                        ):
                            yield (ax + bx, acuts | bcuts)

    def _completed_cluster(self, entry):
        # a cut branch finishes the child cluster: any realisation inside
        # the weight window works, independent of the caller's window
        key = id(entry)
        if key not in self._cluster_memo:
            self._cluster_memo[key] = _first(
                self.candidates(entry, self.params.lower, self.params.upper)
            )
        return self._cluster_memo[key]


def reconstruct(run: AnnotatedRun, target=None) -> Partition:
    """Rebuild a partition from an annotated run.

    For the tuple solver ``target`` is a ``(weight, count)`` pair from the
    root set (defaulting to the feasible tuple with the smallest weight).
    For the interval solver it is an ``(low, high, count)`` triple of a
    stored root interval meeting the weight window (same default rule).
    Raises :class:`WitnessNotFoundError` when no target qualifies; for a
    feasible instance that indicates a solver bug.
    """
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 8 * run.graph.num_vertices + 1000))
    params = run.params
    if run.algorithm == "tupleset":
        key = target
        if key is None:
            options = sorted(
                (x, k)
                for (x, k) in run.root_state
                if k == params.num_clusters and params.lower <= x <= params.upper
            )
            key = options[0] if options else None
        if key is None or key not in run.root_state:
            raise WitnessNotFoundError("no feasible root tuple to reconstruct")
        cuts = collect_cuts(run.root_state, key)
        return canonicalize_partition(run.graph, cuts)

    entries = run.root_state.get(params.num_clusters, ())
    if target is not None:
        lo, hi, _k = target
        entries = [e for e in entries if (e.lo, e.hi) == (lo, hi)]
    search = _IntervalSearch(run.graph, params)
    for entry in sorted(entries, key=lambda e: (e.lo, e.hi)):
        if not entry.intersects(params.lower, params.upper):
            continue
        found = _first(search.candidates(entry, params.lower, params.upper))
        if found is not None:
            return canonicalize_partition(run.graph, found[1])
    raise WitnessNotFoundError("no feasible root interval to reconstruct")
