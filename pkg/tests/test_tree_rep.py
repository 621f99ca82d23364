import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cactus_partition import build_tree, configuration_edges
from cactus_partition.tree_rep import absent_cycle_edge

from util import graph_from, path, random_graph


def square_cycle():
    # cycle r-x-y-z rooted at r
    return graph_from(
        {"r": 1, "x": 1, "y": 1, "z": 1},
        [("r", "x"), ("x", "y"), ("y", "z"), ("z", "r")],
    )


def test_cycle_becomes_root_to_descendant_path():
    tree = build_tree(square_cycle(), root="r")
    (cyc,) = tree.cycles
    assert cyc.start == "r"
    assert cyc.end == "z"
    assert cyc.path == ("r", "x", "y", "z")
    assert cyc.closing_edge == ("r", "z")


def test_path_has_no_cycles():
    tree = build_tree(path([1, 1, 1]), root="n0")
    assert tree.cycles == ()
    assert tree.children["n0"] == ("n1",)
    assert tree.children["n1"] == ("n2",)


def test_two_triangles_sharing_a_vertex():
    g = graph_from(
        {v: 1 for v in "sabcd"},
        [("s", "a"), ("a", "b"), ("b", "s"), ("s", "c"), ("c", "d"), ("d", "s")],
    )
    tree = build_tree(g, root="s")
    assert len(tree.cycles) == 2
    # shared vertex starts both cycles; nobody is a non-start member twice
    non_start_members = [v for c in tree.cycles for v in c.path[1:]]
    assert len(non_start_members) == len(set(non_start_members))
    assert all(c.start == "s" for c in tree.cycles)


def test_on_cycle_child_is_last():
    # hang an extra subtree off an interior cycle node: its on-cycle child
    # must come after the plain subtree regardless of adjacency order
    g = graph_from(
        {v: 1 for v in "rxyzt"},
        [("r", "x"), ("x", "t"), ("x", "y"), ("y", "z"), ("z", "r")],
    )
    tree = build_tree(g, root="r")
    assert tree.children["x"] == ("t", "y")
    assert tree.on_cycle_child["x"] == "y"
    (cyc,) = tree.cycles
    assert cyc.start_child_index == 1
    assert tree.full_index("x") == 1


def test_configuration_edges_square():
    tree = build_tree(square_cycle(), root="r")
    (cyc,) = tree.cycles
    assert configuration_edges(cyc, 1) == (None, None)
    # second configuration: y-z removed, z hangs off r again
    assert configuration_edges(cyc, 2) == (("y", "z"), ("r", "z"))
    # third: x-y removed, y becomes a child of z
    assert configuration_edges(cyc, 3) == (("x", "y"), ("y", "z"))


def test_configuration_index_bounds():
    tree = build_tree(square_cycle(), root="r")
    (cyc,) = tree.cycles
    for j in (0, 4, -1):
        with pytest.raises(IndexError):
            configuration_edges(cyc, j)


def test_absent_edges_cover_all_but_first_tree_edge():
    tree = build_tree(square_cycle(), root="r")
    (cyc,) = tree.cycles
    absent = {absent_cycle_edge(cyc, j) for j in range(1, cyc.length)}
    # every cycle edge except (w0, w1) is absent in exactly one configuration
    assert absent == {("r", "z"), ("y", "z"), ("x", "y")}
    assert absent_cycle_edge(cyc, cyc.length) == ("r", "x")


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_structure_invariants_on_random_cacti(seed):
    g = random_graph(seed, n=seed % 10 + 1, cycle_density=0.6)
    tree = build_tree(g)
    # spanning
    assert sorted(tree.parent) == sorted(g.vertices)
    # each node is a non-start member of at most one cycle
    membership = [v for c in tree.cycles for v in c.path[1:]]
    assert len(membership) == len(set(membership))
    for cyc in tree.cycles:
        assert cyc.length >= 3
        assert cyc.closing_edge in g.cost
        # interior nodes keep their on-cycle child last
        for i in range(1, cyc.length - 1):
            node = cyc.path[i]
            assert tree.children[node][-1] == cyc.path[i + 1]
        # the first path node sits at the recorded child position
        assert tree.children[cyc.start][cyc.start_child_index - 1] == cyc.path[1]


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_build_is_deterministic(seed):
    g = random_graph(seed, n=seed % 10 + 1, cycle_density=0.6)
    assert build_tree(g).to_data() == build_tree(g).to_data()
