"""Connected (l,u)-partition solvers for vertex-weighted cactus graphs."""

from . import errors
from .backtrack import AnnotatedRun, annotate, reconstruct
from .dp_core import (
    ProblemParams,
    cycle_config_set,
    cycle_config_sets,
    decide_p_partition,
    leaf_set,
    oplus,
    root_set,
    subtree_sets,
    trivially_infeasible,
)
from .generate import gen_random_cactus
from .graph_model import (
    CactusGraph,
    Partition,
    canonicalize_partition,
    edge_key,
    validate_cactus,
)
from .interval_dp import (
    decide_p_partition_poly,
    interval_oplus,
    interval_subtree_sets,
    intervals_of,
    merge,
)
from .oracle import (
    PartitionCatalog,
    connected_partitions_grown,
    enumerate_all,
    oracle_capacity,
    oracle_decide,
    oracle_max,
    oracle_maxmin,
    oracle_min,
    oracle_min_cost,
    oracle_minmax,
    oracle_root_tuples,
)
from .tree_rep import CactusTree, CycleRecord, build_tree, configuration_edges
from .variants import (
    capacity_partition,
    max_partition,
    maxmin_partition,
    min_cost_partition,
    min_partition,
    minmax_partition,
)

__version__ = "0.1.0"

__all__ = [
    "AnnotatedRun",
    "CactusGraph",
    "CactusTree",
    "CycleRecord",
    "Partition",
    "PartitionCatalog",
    "ProblemParams",
    "annotate",
    "build_tree",
    "canonicalize_partition",
    "capacity_partition",
    "configuration_edges",
    "connected_partitions_grown",
    "cycle_config_set",
    "cycle_config_sets",
    "decide_p_partition",
    "decide_p_partition_poly",
    "edge_key",
    "enumerate_all",
    "errors",
    "gen_random_cactus",
    "interval_oplus",
    "interval_subtree_sets",
    "intervals_of",
    "leaf_set",
    "max_partition",
    "maxmin_partition",
    "merge",
    "min_cost_partition",
    "min_partition",
    "minmax_partition",
    "oplus",
    "oracle_capacity",
    "oracle_decide",
    "oracle_max",
    "oracle_maxmin",
    "oracle_min",
    "oracle_min_cost",
    "oracle_minmax",
    "oracle_root_tuples",
    "reconstruct",
    "root_set",
    "subtree_sets",
    "trivially_infeasible",
    "validate_cactus",
]
