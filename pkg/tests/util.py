"""Shared builders for the test suite."""

from cactus_partition import gen_random_cactus, validate_cactus


def graph_from(weights, edges, sizes=None, costs=None, capacities=None):
    """Build a validated graph from compact literals.

    ``weights`` maps vertex id to weight, ``edges`` is a list of (u, v)
    pairs; optional dicts add sizes (per vertex) and costs/capacities
    (per (u, v) pair as written in ``edges``).
    """
    vertices = []
    for v, w in weights.items():
        entry = {"id": v, "weight": w}
        if sizes and v in sizes:
            entry["size"] = sizes[v]
        vertices.append(entry)
    edge_docs = []
    for u, v in edges:
        entry = {"u": u, "v": v}
        if costs and (u, v) in costs:
            entry["cost"] = costs[(u, v)]
        if capacities and (u, v) in capacities:
            entry["capacity"] = capacities[(u, v)]
        edge_docs.append(entry)
    return validate_cactus({"vertices": vertices, "edges": edge_docs})


def triangle(w=(1, 1, 1), costs=None, capacities=None):
    names = ("a", "b", "c")
    edges = [("a", "b"), ("b", "c"), ("a", "c")]
    return graph_from(
        dict(zip(names, w)),
        edges,
        costs=dict(zip(edges, costs)) if costs else None,
        capacities=dict(zip(edges, capacities)) if capacities else None,
    )


def path(weights):
    names = [f"n{i}" for i in range(len(weights))]
    return graph_from(
        dict(zip(names, weights)),
        [(names[i], names[i + 1]) for i in range(len(weights) - 1)],
    )


def random_graph(seed, n, cycle_density=0.4, weight_range=(0, 5), **ranges):
    return validate_cactus(
        gen_random_cactus(
            n, cycle_density=cycle_density, weight_range=weight_range, seed=seed, **ranges
        )
    )
