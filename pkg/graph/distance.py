"""Structural Hamming distance between DAGs and CPDAGs"""
from typing import Dict, FrozenSet, Union

from models import Cpdag, Dag
from .cpdag import to_cpdag

Graph = Union[Dag, Cpdag]


def pair_status(graph: Graph) -> Dict[FrozenSet[int], str]:
    """Unordered pair -> "u>v" for a directed edge, "--" for an undirected one"""
    if isinstance(graph, Dag):
        return {frozenset((u, v)): f"{u}>{v}" for u, v in graph.edges}
    status = {frozenset((u, v)): f"{u}>{v}" for u, v in graph.directed}
    status.update({frozenset(pair): "--" for pair in graph.undirected})
    return status


def shd(g1: Graph, g2: Graph) -> int:
    """
    Number of unordered pairs whose status differs: present in one graph
    only, or present in both with a different orientation. A DAG compared
    with a CPDAG is first projected to its own CPDAG.
    """
    if g1.q != g2.q:
        raise ValueError(f"graphs have different node counts ({g1.q} vs {g2.q})")
    if isinstance(g1, Dag) and isinstance(g2, Cpdag):
        g1 = to_cpdag(g1)
    elif isinstance(g1, Cpdag) and isinstance(g2, Dag):
        g2 = to_cpdag(g2)

    status1 = pair_status(g1)
    status2 = pair_status(g2)
    return sum(1 for pair in status1.keys() | status2.keys() if status1.get(pair) != status2.get(pair))
