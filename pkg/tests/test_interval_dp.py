import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cactus_partition import (
    ProblemParams,
    build_tree,
    decide_p_partition,
    decide_p_partition_poly,
    enumerate_all,
    interval_oplus,
    interval_subtree_sets,
    intervals_of,
    merge,
    oracle_decide,
    subtree_sets,
)

from util import graph_from, path, random_graph, triangle


def test_intervals_of_splits_at_large_gaps():
    assert intervals_of({1, 2, 5, 9}, 2) == [(1, 2), (5, 5), (9, 9)]


def test_intervals_of_single_run():
    assert intervals_of({1, 3, 5}, 2) == [(1, 5)]


def test_intervals_of_empty():
    assert intervals_of(set(), 3) == []


def test_intervals_of_zero_gap_gives_singletons():
    assert intervals_of({2, 3, 7}, 0) == [(2, 2), (3, 3), (7, 7)]


def test_merge_joins_interfering():
    assert merge([(1, 3), (5, 6)], 2) == [(1, 6)]


def test_merge_keeps_distant():
    assert merge([(1, 2), (6, 7)], 2) == [(1, 2), (6, 7)]


def test_merge_single():
    assert merge([(4, 9)], 2) == [(4, 9)]


@settings(max_examples=150, deadline=None)
@given(
    ivs=st.lists(
        st.tuples(st.integers(0, 30), st.integers(0, 10)).map(lambda t: (t[0], t[0] + t[1])),
        max_size=10,
    ),
    gap=st.integers(0, 6),
    seed=st.integers(0, 999),
)
def test_merge_is_order_independent(ivs, gap, seed):
    shuffled = list(ivs)
    random.Random(seed).shuffle(shuffled)
    assert merge(shuffled, gap) == merge(ivs, gap)


def test_interval_oplus_basic():
    params = ProblemParams(0, 10, 5)
    got = interval_oplus({1: [(2, 2)]}, {1: [(3, 3)]}, params)
    assert got == {1: [(5, 5)], 2: [(2, 2)]}


def test_interval_oplus_cut_blocked_outside_window():
    params = ProblemParams(5, 9, 3)
    got = interval_oplus({1: [(2, 4)]}, {1: [(3, 3)]}, params)
    assert got == {1: [(5, 7)]}


def test_interval_oplus_empty():
    params = ProblemParams(0, 10, 5)
    assert interval_oplus({1: [(2, 2)]}, {}, params) == {}


def test_single_vertex_interval():
    g = graph_from({"a": 4}, [])
    tree = build_tree(g)
    sets = interval_subtree_sets(tree, ProblemParams(0, 9, 1))
    assert sets[("a", 0)] == {1: ((4, 4),)}


def test_star_rooted_at_leaf():
    # leaf root -> hub -> two more leaves, all weight 1
    g = graph_from(
        {"a": 1, "c": 1, "b": 1, "d": 1},
        [("a", "c"), ("c", "b"), ("c", "d")],
    )
    tree = build_tree(g)  # root "a" is a leaf of the star
    sets = interval_subtree_sets(tree, ProblemParams(0, 4, 4))
    root_intervals = sets[("a", tree.full_index("a"))]
    assert root_intervals[1] == ((4, 4),)
    assert root_intervals[2] == ((1, 3),)


def test_triangle_intervals():
    tree = build_tree(triangle(), root="a")
    sets = interval_subtree_sets(tree, ProblemParams(1, 3, 3))
    assert sets[("a", tree.full_index("a"))] == {
        1: ((3, 3),),
        2: ((1, 2),),
        3: ((1, 1),),
    }


def test_decide_poly_examples():
    assert decide_p_partition_poly(triangle(), ProblemParams(1, 1, 3)) is True
    assert decide_p_partition_poly(triangle(), ProblemParams(2, 2, 2)) is False
    assert decide_p_partition_poly(path([2, 2, 2]), ProblemParams(2, 4, 2)) is True
    g = path([1, 2, 3])
    assert decide_p_partition_poly(g, ProblemParams(6, 6, 1)) is True
    assert decide_p_partition_poly(g, ProblemParams(0, 2, 1)) is False  # heavy vertex


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 10**6), lower=st.integers(0, 8), span=st.integers(0, 10), p=st.integers(1, 9))
def test_poly_decision_matches_tupleset_and_oracle(seed, lower, span, p):
    g = random_graph(seed, n=seed % 9 + 1, cycle_density=0.5)
    params = ProblemParams(lower, lower + span, p)
    expected = oracle_decide(enumerate_all(g), params.lower, params.upper, p)
    assert decide_p_partition(g, params) == expected
    assert decide_p_partition_poly(g, params) == expected


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), value=st.integers(0, 12), p=st.integers(1, 9))
def test_degenerate_window_lower_equals_upper(seed, value, p):
    # gap 0 turns every interval into a singleton; decisions must still agree
    g = random_graph(seed, n=seed % 9 + 1, cycle_density=0.5)
    params = ProblemParams(value, value, p)
    expected = oracle_decide(enumerate_all(g), value, value, p)
    assert decide_p_partition_poly(g, params) == expected


def test_interval_sets_cover_tuple_sets():
    # every achievable weight lies inside a stored interval and every
    # stored interval starts at an achievable weight
    for seed in range(30):
        g = random_graph(seed + 300, n=seed % 9 + 1, cycle_density=0.5)
        if g.max_weight > g.total_weight // 2 + 1:
            continue
        params = ProblemParams(1, g.total_weight // 2 + 1, min(5, g.num_vertices))
        tree = build_tree(g)
        tuple_sets = subtree_sets(tree, params)
        interval_sets = interval_subtree_sets(tree, params)
        for ctx, tuples in tuple_sets.items():
            per_count: dict = {}
            for (x, k) in tuples:
                per_count.setdefault(k, set()).add(x)
            stored = interval_sets[ctx]
            assert set(stored) == set(per_count)
            for k, xs in per_count.items():
                for x in xs:
                    assert any(lo <= x <= hi for (lo, hi) in stored[k])
                for (lo, _hi) in stored[k]:
                    assert lo in xs
                assert len(stored[k]) <= k  # interval count bound
