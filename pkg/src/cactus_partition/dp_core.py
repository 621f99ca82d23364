"""Bottom-up tuple-set dynamic program for fixed-count partitions.

The solver walks the rooted cactus tree from the leaves up, maintaining
for every partial subtree the set of pairs ``(x, k)``: there is a
partition of the subtree into ``k`` connected clusters where every
cluster except the one containing the subtree root fits the weight window
``[lower, upper]`` and the root cluster weighs ``x`` (at most ``upper``).
Such partitions are *extendable*: the root cluster may still grow.

Two subtree sets A (around the root ``v``) and B (a child subtree) are
combined edge by edge:

* keep the child cluster separate, which requires its weight to reach the
  lower bound, giving ``(x1, k1 + k2)``; the connecting edge is cut, or
* merge the two root clusters into ``(x1 + x2, k1 + k2 - 1)`` provided
  the sum stays within the upper bound.

Cycles need extra care because a cycle can be cut anywhere.  A cycle path
of m nodes is evaluated in m-1 *configurations*: configuration 1 is the
tree as built, and configuration j >= 2 removes the tree edge between the
path nodes at positions m-j and m-j+1 while re-attaching the lower part
of the path (reversed) underneath the start node through the closing
edge.  Every partition of the cycle shows up in at least one of these
configurations, so the subtree set at the start node is the union over
all of them.

The same traversal drives several payload algebras: a bitmask algebra for
fast decisions, a recorded algebra whose entries remember one witness
combination each (enough to rebuild an actual partition), and the cost /
size / capacity algebras of the optimisation variants.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParamsError, WeightExceedsUpperError
from .graph_model import CactusGraph, edge_key
from .tree_rep import CactusTree, CycleRecord, absent_cycle_edge, build_tree


@dataclass(frozen=True)
class ProblemParams:
    """Parameters of a fixed-count partition problem.

    ``lower``/``upper`` bound every cluster weight and ``num_clusters``
    is the exact number of clusters requested.  ``gap`` (upper - lower)
    drives the interval compression of the polynomial solver.
    """

    lower: int
    upper: int
    num_clusters: int

    def __post_init__(self) -> None:
        for name in ("lower", "upper", "num_clusters"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise InvalidParamsError(f"{name} must be an integer, got {value!r}")
        if self.lower < 0 or self.upper < 0:
            raise InvalidParamsError("weight bounds must be non-negative")
        if self.lower > self.upper:
            raise InvalidParamsError(
                f"lower bound {self.lower} exceeds upper bound {self.upper}"
            )
        if self.num_clusters < 1:
            raise InvalidParamsError("cluster count must be positive")

    @property
    def gap(self) -> int:
        return self.upper - self.lower


@dataclass(frozen=True)
class CycleStep:
    """Context of one cycle configuration while folding its path."""

    cycle: CycleRecord
    j: int
    absent_edge: tuple[str, str]


def trivially_infeasible(graph: CactusGraph, params: ProblemParams) -> str | None:
    """Reason the instance cannot have a solution, or None.

    A single vertex heavier than the upper bound can never sit in a valid
    cluster, and more clusters than vertices are impossible.  The solvers
    answer "no" for these without running the dynamic program.
    """
    if params.num_clusters > graph.num_vertices:
        return "more clusters requested than vertices"
    if graph.max_weight > params.upper:
        return "a vertex weight exceeds the upper bound"
    return None


# ---------------------------------------------------------------------------
# shared traversal


def run_tree_dp(tree, alg, include_redundant_config=False, config_sink=None):
    """Fold ``alg`` bottom-up over the tree, returning all partial states.

    The result maps ``(v, i)`` to the algebra state of the subtree made of
    ``v`` and its first ``i`` children.  ``config_sink``, when given, is
    filled with the per-configuration states of every cycle, keyed by
    ``(cycle, j)``.  ``include_redundant_config`` additionally evaluates
    the m-th configuration of each cycle (never needed for correctness;
    used by tests that check it adds nothing).
    """
    sets = {}
    for v in tree.postorder():
        state = alg.base(v)
        sets[(v, 0)] = state
        kids = tree.children[v]
        on_cyc = tree.on_cycle_child.get(v)
        for idx, child in enumerate(kids, start=1):
            cyc = tree.cycle_at.get((v, idx))
            if cyc is not None:
                state = _cycle_union(
                    tree, alg, sets, cyc, state, include_redundant_config, config_sink
                )
            elif child == on_cyc:
                # combined at the cycle's start node instead; must be last
                assert idx == len(kids)
                continue
            else:
                child_state = sets[(child, tree.full_index(child))]
                state = alg.combine(state, child_state, edge_key(v, child), None)
            sets[(v, idx)] = state
    return sets


def _cycle_union(tree, alg, sets, cyc, start_state, include_redundant, config_sink):
    """Union of the per-configuration states at the cycle's start node.

    In configuration j the cycle path splits in two chains that are folded
    from their deepest node upwards: the remainder of the original path
    under the first path child, and (for j >= 2) the reversed tail hanging
    off the start node through the closing edge.  The two nodes incident
    to the configuration's absent edge sit at the bottoms of these chains;
    algebras that charge the absent edge (capacities) mark them via
    ``lift(..., charged=True)``.
    """
    ws = cyc.path
    m = len(ws)

    def own(i):
        node = ws[i]
        return sets[(node, tree.full_index(node))]

    configs = []
    last_j = m if include_redundant else m - 1
    for j in range(1, last_j + 1):
        step = CycleStep(cyc, j, absent_cycle_edge(cyc, j))
        if j < m:
            bottom = m - 1 if j == 1 else m - j
            t = alg.lift(own(bottom), step, charged=True)
            for i in range(bottom - 1, 0, -1):
                t = alg.combine(
                    alg.lift(own(i), step, charged=False),
                    t,
                    edge_key(ws[i], ws[i + 1]),
                    step,
                )
        else:
            t = None
        if j >= 2:
            bottom = m - j + 1
            t2 = alg.lift(own(bottom), step, charged=True)
            for i in range(bottom + 1, m):
                t2 = alg.combine(
                    alg.lift(own(i), step, charged=False),
                    t2,
                    edge_key(ws[i], ws[i - 1]),
                    step,
                )
        else:
            t2 = None
        state = alg.lift(start_state, step, charged=(j == 1 or j == m))
        if t is not None:
            state = alg.combine(state, t, edge_key(ws[0], ws[1]), step)
        if t2 is not None:
            state = alg.combine(state, t2, cyc.closing_edge, step)
        state = alg.strip(state, step)
        configs.append((j, step, state))
        if config_sink is not None:
            config_sink[(cyc, j)] = state
    return alg.union_configs(configs, cyc)


# ---------------------------------------------------------------------------
# bitmask algebra: decisions only, no records


def _mask_values(mask: int) -> list[int]:
    values = []
    while mask:
        low = mask & -mask
        values.append(low.bit_length() - 1)
        mask ^= low
    return values


class MaskAlgebra:
    """Subtree sets as per-count weight bitmasks.

    A state maps cluster count k to an integer whose bit x is set when
    (x, k) is achievable.  The merge branch of the combination becomes a
    batch of shift-or operations, which keeps the pseudo-polynomial
    solver fast for large weight bounds.
    """

    def __init__(self, graph: CactusGraph, params: ProblemParams):
        self.graph = graph
        self.p = params.num_clusters
        self.full_mask = (1 << (params.upper + 1)) - 1
        low = (1 << params.lower) - 1
        self.window_mask = self.full_mask ^ low

    def base(self, v):
        return {1: 1 << self.graph.weight[v]}

    def combine(self, a, b, edge, step):
        out: dict[int, int] = {}
        p = self.p
        window = self.window_mask
        full = self.full_mask
        for k2, mb in b.items():
            if mb & window:
                for k1, ma in a.items():
                    k = k1 + k2
                    if k <= p:
                        out[k] = out.get(k, 0) | ma
            shifts = _mask_values(mb)
            for k1, ma in a.items():
                k = k1 + k2 - 1
                if k > p:
                    continue
                acc = 0
                for x2 in shifts:
                    acc |= ma << x2
                acc &= full
                if acc:
                    out[k] = out.get(k, 0) | acc
        return out

    def lift(self, state, step, charged):
        return state

    def strip(self, state, step):
        return state

    def union_configs(self, configs, cycle):
        out: dict[int, int] = {}
        for _j, _step, state in configs:
            for k, mask in state.items():
                out[k] = out.get(k, 0) | mask
        return out


# ---------------------------------------------------------------------------
# recorded algebra: one witness per tuple, for backtracking


class TupleAlgebra:
    """Subtree sets as ``{(x, k): (None, record)}`` dictionaries.

    Records point at the states and keys they were combined from, so a
    partition can be rebuilt by walking them.  One witness per tuple is
    enough: the sets are exact, hence any stored combination leads to a
    valid partition.  Iteration is sorted so the kept witness is the one
    with the smallest child tuple, making reconstruction deterministic.
    """

    def __init__(self, graph: CactusGraph, params: ProblemParams):
        self.graph = graph
        self.params = params

    def base(self, v):
        return {(self.graph.weight[v], 1): (None, ("leaf", v))}

    def combine(self, a, b, edge, step):
        lower, upper = self.params.lower, self.params.upper
        p = self.params.num_clusters
        out = {}
        for (x2, k2) in sorted(b):
            feasible = x2 >= lower
            for (x1, k1) in sorted(a):
                if feasible and k1 + k2 <= p:
                    key = (x1, k1 + k2)
                    if key not in out:
                        out[key] = (None, ("step", "cut", a, (x1, k1), b, (x2, k2), edge))
                if x1 + x2 <= upper and k1 + k2 - 1 <= p:
                    key = (x1 + x2, k1 + k2 - 1)
                    if key not in out:
                        out[key] = (None, ("step", "merge", a, (x1, k1), b, (x2, k2), edge))
        return out

    def lift(self, state, step, charged):
        return state

    def strip(self, state, step):
        return state

    def union_configs(self, configs, cycle):
        out = {}
        for j, step, state in configs:
            for key in sorted(state):
                if key not in out:
                    out[key] = (None, ("cfg", j, step.absent_edge, state, key))
        return out


# ---------------------------------------------------------------------------
# public operations


def oplus(a, b, params: ProblemParams):
    """Combine two tuple sets across an edge (reference implementation).

    Returns exactly the pairs produced by keeping the child cluster
    separate (its weight must reach the lower bound) or merging the two
    root clusters (the sum must respect the upper bound), with cluster
    counts capped at the requested number.
    """
    lower, upper, p = params.lower, params.upper, params.num_clusters
    out = set()
    for (x1, k1) in a:
        for (x2, k2) in b:
            if x2 >= lower and k1 + k2 <= p:
                out.add((x1, k1 + k2))
            if x1 + x2 <= upper and k1 + k2 - 1 <= p:
                out.add((x1 + x2, k1 + k2 - 1))
    return out


def leaf_set(weight: int, params: ProblemParams):
    """Base set of a bare subtree root: one cluster holding just the vertex."""
    if weight > params.upper:
        raise WeightExceedsUpperError(
            f"vertex weight {weight} exceeds upper bound {params.upper}"
        )
    return {(weight, 1)}


def _mask_state_to_set(state) -> frozenset:
    return frozenset(
        (x, k) for k, mask in state.items() for x in _mask_values(mask)
    )


def _check_leaf_weights(graph: CactusGraph, params: ProblemParams) -> None:
    if graph.max_weight > params.upper:
        raise WeightExceedsUpperError(
            f"vertex weight {graph.max_weight} exceeds upper bound {params.upper}"
        )


def subtree_sets(tree: CactusTree, params: ProblemParams, *, _redundant=False):
    """All tuple sets of the tree, keyed by ``(node, children_included)``."""
    _check_leaf_weights(tree.graph, params)
    states = run_tree_dp(tree, MaskAlgebra(tree.graph, params), _redundant)
    return {ctx: _mask_state_to_set(state) for ctx, state in states.items()}


def cycle_config_sets(tree: CactusTree, params: ProblemParams, cycle: CycleRecord, *, _redundant=False):
    """Per-configuration tuple sets of one cycle, keyed by configuration index."""
    _check_leaf_weights(tree.graph, params)
    sink: dict = {}
    run_tree_dp(tree, MaskAlgebra(tree.graph, params), _redundant, config_sink=sink)
    return {
        j: _mask_state_to_set(state)
        for (cyc, j), state in sink.items()
        if cyc == cycle
    }


def cycle_config_set(tree: CactusTree, params: ProblemParams, cycle: CycleRecord, j: int):
    """Tuple set contributed by configuration ``j`` of ``cycle``."""
    if not 1 <= j <= cycle.length - 1:
        raise IndexError(f"configuration index {j} out of range 1..{cycle.length - 1}")
    return cycle_config_sets(tree, params, cycle)[j]


def root_set(tree: CactusTree, params: ProblemParams):
    """Tuple set of the whole tree."""
    _check_leaf_weights(tree.graph, params)
    states = run_tree_dp(tree, MaskAlgebra(tree.graph, params))
    return _mask_state_to_set(states[(tree.root, tree.full_index(tree.root))])


def decide_p_partition(
    graph: CactusGraph, params: ProblemParams, root: str | None = None
) -> bool:
    """Decide whether the graph splits into exactly the requested clusters.

    True iff there is a partition into ``params.num_clusters`` connected
    clusters whose weights all lie in ``[lower, upper]``.
    """
    if trivially_infeasible(graph, params):
        return False
    tree = build_tree(graph, root)
    alg = MaskAlgebra(graph, params)
    states = run_tree_dp(tree, alg)
    mask = states[(tree.root, tree.full_index(tree.root))].get(params.num_clusters, 0)
    return bool(mask & alg.window_mask)
