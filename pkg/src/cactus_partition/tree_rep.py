"""Rooted DFS-tree representation of a cactus graph.

Rooting the graph by depth-first search degenerates every cycle into a
tree path.  Each cycle is kept as a record of that path: the node closest
to the root is the cycle's start node, the deepest one its end node, and
the graph edge between them (absent from the tree) closes the cycle.

Two structural facts make the downstream dynamic programs work:

* every node is a non-start member of at most one cycle, and
* if a node lies strictly inside a cycle path, its on-cycle child is
  placed last among its children.

Both are established here, right after the DFS.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph_model import CactusGraph, Edge, edge_key


@dataclass(frozen=True)
class CycleRecord:
    """One cycle, stored as its root-to-descendant tree path."""

    start: str
    end: str
    path: tuple[str, ...]
    closing_edge: Edge
    start_child_index: int  # 1-based position of path[1] among start's children

    @property
    def length(self) -> int:
        return len(self.path)


@dataclass(frozen=True)
class CactusTree:
    """DFS tree of a cactus graph with ordered children and cycle records."""

    graph: CactusGraph
    root: str
    parent: dict[str, str | None] = field(repr=False)
    children: dict[str, tuple[str, ...]] = field(repr=False)
    cycles: tuple[CycleRecord, ...]
    # interior cycle node -> its (last) on-cycle child
    on_cycle_child: dict[str, str] = field(repr=False)
    # (start node, 1-based child index) -> cycle starting there
    cycle_at: dict[tuple[str, int], CycleRecord] = field(repr=False)

    def postorder(self) -> list[str]:
        order = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(self.children[v])
        order.reverse()
        return order

    def full_index(self, v: str) -> int:
        """Number of children combined directly into this node's subtree set.

        For a node strictly inside a cycle path the last child is reached
        through the cycle machinery at the start node, not through a plain
        parent-child combination, so it is excluded here.
        """
        n = len(self.children[v])
        return n - 1 if v in self.on_cycle_child else n

    def to_data(self) -> dict:
        """JSON-friendly debug dump of the tree and its cycle records."""
        return {
            "root": self.root,
            "children": {v: list(cs) for v, cs in self.children.items()},
            "cycles": [
                {
                    "start": c.start,
                    "end": c.end,
                    "path": list(c.path),
                    "closing_edge": list(c.closing_edge),
                    "start_child_index": c.start_child_index,
                }
                for c in self.cycles
            ],
        }


def build_tree(graph: CactusGraph, root: str | None = None) -> CactusTree:
    """Build the rooted tree representation of ``graph``.

    The default root is the lexicographically smallest vertex id, which
    keeps trees (and therefore reconstructed partitions) deterministic.
    Children follow the input adjacency order except for the on-cycle
    reordering described in the module docstring.
    """
    if root is None:
        root = min(graph.vertices)
    elif root not in graph.weight:
        raise ValueError(f"root {root!r} is not a vertex")

    parent: dict[str, str | None] = {root: None}
    depth = {root: 0}
    children: dict[str, list[str]] = {v: [] for v in graph.vertices}
    raw_cycles: list[tuple[str, ...]] = []

    stack: list[tuple[str, iter]] = [(root, iter(graph.adjacency[root]))]
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if w not in depth:
                parent[w] = v
                depth[w] = depth[v] + 1
                children[v].append(w)
                stack.append((w, iter(graph.adjacency[w])))
                advanced = True
                break
            if w != parent[v] and depth[w] < depth[v]:
                # back edge: the tree path from w down to v is a cycle path
                path = [v]
                cur = v
                while cur != w:
                    cur = parent[cur]
                    path.append(cur)
                path.reverse()
                raw_cycles.append(tuple(path))
        if not advanced:
            stack.pop()

    # Remark-style reordering: inside each cycle path, move the on-cycle
    # child to the last position.  A node can be a non-start member of at
    # most one cycle, so the reorderings never conflict.
    on_cycle_child: dict[str, str] = {}
    for path in raw_cycles:
        for i in range(1, len(path) - 1):
            node, nxt = path[i], path[i + 1]
            if node in on_cycle_child:
                raise AssertionError(
                    f"node {node!r} is a non-start member of two cycles"
                )
            on_cycle_child[node] = nxt
            kids = children[node]
            kids.remove(nxt)
            kids.append(nxt)

    cycles = []
    cycle_at: dict[tuple[str, int], CycleRecord] = {}
    for path in raw_cycles:
        start, end = path[0], path[-1]
        idx = children[start].index(path[1]) + 1
        rec = CycleRecord(
            start=start,
            end=end,
            path=path,
            closing_edge=edge_key(start, end),
            start_child_index=idx,
        )
        cycles.append(rec)
        cycle_at[(start, idx)] = rec

    return CactusTree(
        graph=graph,
        root=root,
        parent=parent,
        children={v: tuple(cs) for v, cs in children.items()},
        cycles=tuple(cycles),
        on_cycle_child=on_cycle_child,
        cycle_at=cycle_at,
    )


def configuration_edges(cycle: CycleRecord, j: int) -> tuple[Edge | None, Edge | None]:
    """Edges (removed from the tree, re-added) that define configuration ``j``.

    Configuration 1 is the tree as built.  In configuration j >= 2 the
    node m-j+1 positions along the path stops being a child of its path
    predecessor and hangs off the path successor instead (indices wrap at
    the start node), so one tree edge is removed and one cycle edge comes
    back.  Only configurations 1..m-1 exist; the m-th would re-root the
    whole path and is never needed.
    """
    m = cycle.length
    if not 1 <= j <= m - 1:
        raise IndexError(f"configuration index {j} out of range 1..{m - 1}")
    if j == 1:
        return None, None
    ws = cycle.path
    removed = edge_key(ws[m - j], ws[m - j + 1])
    added = edge_key(ws[(m - j + 2) % m], ws[m - j + 1])
    return removed, added


def absent_cycle_edge(cycle: CycleRecord, j: int) -> Edge:
    """The one cycle edge missing from configuration ``j`` (1 <= j <= m)."""
    m = cycle.length
    if j == 1:
        return cycle.closing_edge
    ws = cycle.path
    return edge_key(ws[m - j], ws[(m - j + 1) % m])
