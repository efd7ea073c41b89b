"""DAG operations, equivalence classes, distances and edge-list I/O"""
from .operations import (
    ancestors,
    apply_move,
    children,
    descendants,
    direct_successors,
    enumerate_dags,
    enumerate_moves,
    is_acyclic,
    parents,
    random_constrained_dag,
    reachability,
    reverse_move,
    skeleton,
    topological_order,
)
from .cpdag import cpdag_extension, to_cpdag, vstructures
from .distance import pair_status, shd
from .io import (
    format_constraints,
    format_graph,
    parse_constraints,
    parse_graph,
    read_constraints,
    read_graph,
    write_constraints,
    write_edge_list,
    write_graph,
)

__all__ = [
    "ancestors",
    "apply_move",
    "children",
    "descendants",
    "direct_successors",
    "enumerate_dags",
    "enumerate_moves",
    "is_acyclic",
    "parents",
    "random_constrained_dag",
    "reachability",
    "reverse_move",
    "skeleton",
    "topological_order",
    "cpdag_extension",
    "to_cpdag",
    "vstructures",
    "pair_status",
    "shd",
    "format_constraints",
    "format_graph",
    "parse_constraints",
    "parse_graph",
    "read_constraints",
    "read_graph",
    "write_constraints",
    "write_edge_list",
    "write_graph",
]
