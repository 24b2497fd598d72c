"""Efficient dominating sets (perfect codes) in S_{1,3,3}-free bipartite graphs."""

from .graph import DistanceLevels, Graph, GraphError, bipartition, build_graph, components, distance_levels
from .oracle import count_eds, enumerate_eds, solve_exact, verify_eds
from .recognize import S133, PatternSpec, PatternWitness, find_induced_sijk, is_s133_free_bipartite
from .reduction import EdsState, init_root, reduce_graph
from .solver import SolveOptions, SolveOutcome, Verdict, solve, solve_with_root

__all__ = [
    "DistanceLevels",
    "EdsState",
    "Graph",
    "GraphError",
    "PatternSpec",
    "PatternWitness",
    "S133",
    "SolveOptions",
    "SolveOutcome",
    "Verdict",
    "bipartition",
    "build_graph",
    "components",
    "count_eds",
    "distance_levels",
    "enumerate_eds",
    "find_induced_sijk",
    "init_root",
    "is_s133_free_bipartite",
    "reduce_graph",
    "solve",
    "solve_exact",
    "solve_with_root",
    "verify_eds",
]
