"""Markov equivalence: v-structures, CPDAG projection and consistent extension"""
from typing import FrozenSet, Set, Tuple

from models import Cpdag, Dag, Edge


def _skeleton_pairs(edges) -> Set[FrozenSet[int]]:
    return {frozenset(edge) for edge in edges}


def vstructures(dag: Dag) -> Set[Tuple[int, int, int]]:
    """Triples (a, b, c) with a -> b <- c, a < c and a, c nonadjacent"""
    adjacent = _skeleton_pairs(dag.edges)
    found = set()
    for b, parent_set in enumerate(dag.parent_sets):
        for i, a in enumerate(parent_set):
            for c in parent_set[i + 1:]:
                if frozenset((a, c)) not in adjacent:
                    found.add((a, b, c))
    return found


def to_cpdag(dag: Dag) -> Cpdag:
    """
    Completed partially directed graph of the equivalence class of ``dag``.

    Edges in v-structures start out directed, everything else undirected;
    Meek rules 1-3 then orient compelled edges until nothing changes.
    """
    adjacent = _skeleton_pairs(dag.edges)
    directed: Set[Edge] = set()
    for a, b, c in vstructures(dag):
        directed.add((a, b))
        directed.add((c, b))
    undirected: Set[FrozenSet[int]] = adjacent - _skeleton_pairs(directed)

    def is_adjacent(x: int, y: int) -> bool:
        return frozenset((x, y)) in adjacent

    def orient(x: int, y: int):
        undirected.discard(frozenset((x, y)))
        directed.add((x, y))

    nodes = range(dag.q)
    changed = True
    while changed:
        changed = False
        for pair in sorted(undirected, key=sorted):
            if pair not in undirected:
                continue
            x, y = sorted(pair)
            for b, c in ((x, y), (y, x)):
                # Rule 1: a -> b - c with a, c nonadjacent
                if any((a, b) in directed and a != c and not is_adjacent(a, c) for a in nodes):
                    orient(b, c)
                    changed = True
                    break
                # Rule 2: b -> m -> c with b - c
                if any((b, m) in directed and (m, c) in directed for m in nodes):
                    orient(b, c)
                    changed = True
                    break
                # Rule 3: b - m1 -> c, b - m2 -> c, m1 and m2 nonadjacent
                witnesses = [
                    m for m in nodes
                    if frozenset((b, m)) in undirected and (m, c) in directed
                ]
                if any(
                    not is_adjacent(m1, m2)
                    for i, m1 in enumerate(witnesses)
                    for m2 in witnesses[i + 1:]
                ):
                    orient(b, c)
                    changed = True
                    break

    return Cpdag(
        q=dag.q,
        directed=frozenset(directed),
        undirected=frozenset(tuple(sorted(pair)) for pair in undirected),
    )


def cpdag_extension(cpdag: Cpdag) -> Dag:
    """
    One DAG in the equivalence class, by repeatedly removing a sink whose
    undirected neighbours are adjacent to all of its other neighbours.
    """
    directed = set(cpdag.directed)
    undirected = {frozenset(pair) for pair in cpdag.undirected}
    adjacent = undirected | _skeleton_pairs(directed)
    remaining = set(range(cpdag.q))
    edges: Set[Edge] = set(directed)

    while remaining:
        for x in sorted(remaining):
            if any((x, y) in directed for y in remaining):
                continue
            neighbours = {y for y in remaining if frozenset((x, y)) in undirected}
            adjacents = {y for y in remaining if y != x and frozenset((x, y)) in adjacent}
            if all(
                frozenset((y, z)) in adjacent
                for y in neighbours
                for z in adjacents
                if z != y
            ):
                for y in neighbours:
                    edges.add((y, x))
                remaining.remove(x)
                break
        else:
            raise ValueError("partially directed graph admits no consistent DAG extension")

    return Dag(q=cpdag.q, edges=frozenset(edges))
