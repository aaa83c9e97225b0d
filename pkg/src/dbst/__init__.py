"""Degree-bounded spanning trees on metric graphs via adoption moves.

Given a complete graph whose weights satisfy the triangle inequality, a
spanning tree, and a per-vertex degree cap, this package repairs the tree to
meet the caps while provably limiting the weight increase: optimally via a
minimum-cost flow on the adoption network, or in linear time with the same
worst-case ratio 2 - min{(bound(v)-2)/(degree(v)-2)}.
"""

from ._adoption import (
    AdoptionError,
    AdoptionFlow,
    AdoptionSequence,
    AdoptionStep,
    FlowError,
    adopt,
    apply_sequence,
    cancel_cycles,
    flow_to_sequence,
    replay_sequence,
    sequence_cost,
    sequence_feasible,
    sequence_to_flow,
)
from ._flow import AdoptionNetwork, build_network, min_cost_flow, solve_optimal
from ._generators import (
    T2Bounds,
    T2PointSet,
    gen_kary,
    gen_path,
    gen_random,
    gen_t2,
    kary_level_sizes,
    kary_lower_bound,
    splitmix64_stream,
    splitmix64_unit,
    t2_bounds,
    t2_witness_tree,
    t2_witness_weight,
)
from ._heuristics import (
    UniformFlow,
    algorithm1,
    algorithm2,
    flow_fraction,
    performance_bound,
    uniform_flow,
)
from ._io import (
    format_flow_dump,
    format_trace,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    load_tree,
    parse_trace,
    save_instance,
    save_tree,
)
from ._metric import MetricInstance, point_distance, tree_induced_instance
from ._mst import mst
from ._oracle import brute_dbst, brute_hamilton_path
from ._report import SolveReport
from ._tree import (
    DegreeBounds,
    InfeasibleBoundsError,
    SpanningTree,
    deficits,
    meets_bounds,
    tree_weight,
)

__version__ = "0.1.0"

__all__ = [
    "AdoptionError",
    "AdoptionFlow",
    "AdoptionNetwork",
    "AdoptionSequence",
    "AdoptionStep",
    "BoundedDegreeSpanningTree",
    "DegreeBounds",
    "FlowError",
    "InfeasibleBoundsError",
    "MetricInstance",
    "SolveReport",
    "SpanningTree",
    "T2Bounds",
    "T2PointSet",
    "UniformFlow",
    "adopt",
    "algorithm1",
    "algorithm2",
    "apply_sequence",
    "brute_dbst",
    "brute_hamilton_path",
    "build_network",
    "cancel_cycles",
    "deficits",
    "flow_fraction",
    "flow_to_sequence",
    "format_flow_dump",
    "format_trace",
    "gen_kary",
    "gen_path",
    "gen_random",
    "gen_t2",
    "instance_from_dict",
    "instance_to_dict",
    "kary_level_sizes",
    "kary_lower_bound",
    "load_instance",
    "load_tree",
    "meets_bounds",
    "min_cost_flow",
    "mst",
    "parse_trace",
    "performance_bound",
    "point_distance",
    "replay_sequence",
    "save_instance",
    "save_tree",
    "sequence_cost",
    "sequence_feasible",
    "sequence_to_flow",
    "solve_optimal",
    "splitmix64_stream",
    "splitmix64_unit",
    "t2_bounds",
    "t2_witness_tree",
    "t2_witness_weight",
    "tree_induced_instance",
    "tree_weight",
    "uniform_flow",
]


def __getattr__(name):
    # imported lazily so the core library does not pay the sklearn import
    if name == "BoundedDegreeSpanningTree":
        from ._estimator import BoundedDegreeSpanningTree

        return BoundedDegreeSpanningTree
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
