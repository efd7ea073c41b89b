"""DAG queries, local-move enumeration and DAG-space enumeration"""
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from errors import ConstraintViolationError
from models import Dag, Edge, EdgeConstraints, Move, MoveType, topological_sort

logger = logging.getLogger(__name__)


def _check_node(dag: Dag, v: int):
    if not 0 <= v < dag.q:
        raise IndexError(f"node {v} outside 0..{dag.q - 1}")


def parents(dag: Dag, v: int) -> Set[int]:
    """pa(v) = {u : u -> v}"""
    _check_node(dag, v)
    return {u for u, w in dag.edges if w == v}


def children(dag: Dag, v: int) -> Set[int]:
    _check_node(dag, v)
    return {w for u, w in dag.edges if u == v}


def descendants(dag: Dag, v: int) -> Set[int]:
    """Nodes reachable from v by a directed path of length >= 1"""
    _check_node(dag, v)
    found: Set[int] = set()
    stack = list(children(dag, v))
    while stack:
        node = stack.pop()
        if node not in found:
            found.add(node)
            stack.extend(children(dag, node))
    return found


def ancestors(dag: Dag, v: int) -> Set[int]:
    """Nodes with a directed path of length >= 1 into v"""
    _check_node(dag, v)
    found: Set[int] = set()
    stack = list(parents(dag, v))
    while stack:
        node = stack.pop()
        if node not in found:
            found.add(node)
            stack.extend(parents(dag, node))
    return found


def skeleton(dag: Dag) -> np.ndarray:
    """Symmetric 0/1 matrix S with S[u, v] = 1 iff u -> v or v -> u"""
    adjacency = dag.adjacency
    return (adjacency | adjacency.T).astype(int)


def is_acyclic(q: int, edges: Iterable[Edge]) -> bool:
    """True iff iterative removal of in-degree-0 nodes empties the graph"""
    return topological_sort(q, list(edges)) is not None


def topological_order(dag: Dag) -> List[int]:
    return topological_sort(dag.q, dag.edges)


def reachability(adjacency: np.ndarray) -> np.ndarray:
    """R[a, b] = True iff a directed path of length >= 1 leads from a to b (Warshall closure)"""
    closure = np.array(adjacency, dtype=bool)
    for k in range(closure.shape[0]):
        closure |= np.outer(closure[:, k], closure[k, :])
    return closure


def _has_alternative_path(adjacency: np.ndarray, closure: np.ndarray, u: int, v: int) -> bool:
    """Does a path u ~> v exist that avoids the edge u -> v itself?"""
    for w in np.flatnonzero(adjacency[u]):
        if w != v and closure[w, v]:
            return True
    return False


def enumerate_moves(dag: Dag, constraints: Optional[EdgeConstraints] = None) -> List[Move]:
    """
    All single-edge moves leading from ``dag`` to another DAG satisfying the constraints.

    Insert u -> v needs the pair empty, no path v ~> u and (u, v) allowed;
    delete is always possible; reversing u -> v needs no other path
    u ~> v and (v, u) allowed. The list order is deterministic.
    """
    if constraints is None:
        constraints = EdgeConstraints(q=dag.q)
    if constraints.q != dag.q:
        raise ValueError(f"constraints cover {constraints.q} nodes, DAG has {dag.q}")
    violated = dag.edges & constraints.forbidden
    if violated:
        raise ConstraintViolationError(f"DAG contains forbidden edges {sorted(violated)}")

    adjacency = dag.adjacency
    forbidden = constraints.mask
    closure = reachability(adjacency)
    moves: List[Move] = []
    for u in range(dag.q):
        for v in range(dag.q):
            if u == v:
                continue
            if adjacency[u, v]:
                moves.append(Move(move_type=MoveType.DELETE, u=u, v=v))
                if not forbidden[v, u] and not _has_alternative_path(adjacency, closure, u, v):
                    moves.append(Move(move_type=MoveType.REVERSE, u=u, v=v))
            elif not adjacency[v, u] and not forbidden[u, v] and not closure[v, u]:
                moves.append(Move(move_type=MoveType.INSERT, u=u, v=v))
    return moves


def apply_move(dag: Dag, move: Move) -> Dag:
    edges = set(dag.edges)
    edge = (move.u, move.v)
    if move.move_type == MoveType.INSERT:
        if edge in edges or (move.v, move.u) in edges:
            raise ValueError(f"cannot insert {edge}: pair already adjacent")
        edges.add(edge)
    elif move.move_type == MoveType.DELETE:
        if edge not in edges:
            raise ValueError(f"cannot delete {edge}: edge absent")
        edges.remove(edge)
    else:
        if edge not in edges:
            raise ValueError(f"cannot reverse {edge}: edge absent")
        edges.remove(edge)
        edges.add((move.v, move.u))
    return Dag(q=dag.q, edges=frozenset(edges))


def reverse_move(move: Move) -> Move:
    """The move that undoes ``move``"""
    if move.move_type == MoveType.INSERT:
        return Move(move_type=MoveType.DELETE, u=move.u, v=move.v)
    if move.move_type == MoveType.DELETE:
        return Move(move_type=MoveType.INSERT, u=move.u, v=move.v)
    return Move(move_type=MoveType.REVERSE, u=move.v, v=move.u)


def direct_successors(dag: Dag, constraints: Optional[EdgeConstraints] = None) -> List[Tuple[Move, Dag]]:
    """O_D: every DAG reachable by one insert, delete or reverse, tagged with its move"""
    return [(move, apply_move(dag, move)) for move in enumerate_moves(dag, constraints)]


def enumerate_dags(q: int, constraints: Optional[EdgeConstraints] = None) -> List[Dag]:
    """Whole constrained DAG space by successor closure from the empty DAG (small q only)"""
    start = Dag.empty(q)
    seen: Dict[str, Dag] = {start.canonical_key: start}
    frontier = [start]
    while frontier:
        current = frontier.pop()
        for _, successor in direct_successors(current, constraints):
            key = successor.canonical_key
            if key not in seen:
                seen[key] = successor
                frontier.append(successor)
    logger.debug("enumerated %d DAGs over %d nodes", len(seen), q)
    return [seen[key] for key in sorted(seen)]


def random_constrained_dag(
    q: int,
    constraints: Optional[EdgeConstraints],
    edge_prob: float,
    rng: np.random.Generator,
    order: Optional[Sequence[int]] = None,
) -> Dag:
    """
    Independent Bernoulli(edge_prob) edges below a topological order.

    The order is a uniform random permutation unless given; pairs whose
    order-compatible direction is forbidden stay empty.
    """
    if order is None:
        order = rng.permutation(q)
    order = [int(v) for v in order]
    if sorted(order) != list(range(q)):
        raise ValueError("order must be a permutation of the nodes")
    forbidden = constraints.mask if constraints is not None else np.zeros((q, q), dtype=bool)
    edges = set()
    for i in range(q):
        for j in range(i + 1, q):
            u, v = order[i], order[j]
            if rng.random() < edge_prob and not forbidden[u, v]:
                edges.add((u, v))
    return Dag(q=q, edges=frozenset(edges))
