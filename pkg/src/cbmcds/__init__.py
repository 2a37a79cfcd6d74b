"""Enumerate minimal connected dominating sets of convex bipartite graphs."""
from .analysis import BranchingVector, branching_number, growth_check, step6_vector, verify_measure_trace
from .enumerator import EnumerationResult, EnumOptions, TreeStats, enumerate_mcds
from .formats import parse_graph, serialize_graph
from .generators import LowerBoundParams, RandomParams, lower_bound_graph, random_convex_graph
from .graph_core import (
    ConvexBipartiteGraph,
    Interval,
    VertexRef,
    VertexSet,
    cut_vertices,
    is_connected_induced,
    is_dominating,
    is_minimal_cds,
    validate,
)
from .oracle import SolutionSet, check_lemmas, enumerate_mcds_bruteforce

__version__ = "0.1.0"
