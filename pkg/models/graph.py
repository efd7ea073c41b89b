"""Graph models: DAGs, structural constraints, CPDAGs and local moves"""
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Edge = Tuple[int, int]


def topological_sort(q: int, edges: Iterable[Edge]) -> Optional[List[int]]:
    """
    Kahn's algorithm: repeatedly remove in-degree-0 nodes, smallest index first.

    Returns None when the edge set contains a directed cycle.
    """
    children: Dict[int, List[int]] = {v: [] for v in range(q)}
    in_degree = [0] * q
    for u, v in edges:
        children[u].append(v)
        in_degree[v] += 1

    ready = sorted(v for v in range(q) if in_degree[v] == 0)
    order: List[int] = []
    while ready:
        node = ready.pop(0)
        order.append(node)
        for child in children[node]:
            in_degree[child] -= 1
            if in_degree[child] == 0:
                ready.append(child)
        ready.sort()
    return order if len(order) == q else None


def _check_pairs(q: int, pairs: Iterable[Edge], what: str):
    for u, v in pairs:
        if not (0 <= u < q and 0 <= v < q):
            raise ValueError(f"{what} ({u}, {v}) references a node outside 0..{q - 1}")
        if u == v:
            raise ValueError(f"{what} ({u}, {v}) is a self loop")


class MoveType(str, Enum):
    """Local move types of the DAG proposal"""
    INSERT = "insert"    # (a)
    DELETE = "delete"    # (b)
    REVERSE = "reverse"  # (c)


class Move(BaseModel):
    """A single-edge change: insert u->v, delete u->v, or reverse u->v into v->u"""
    model_config = ConfigDict(frozen=True)

    move_type: MoveType
    u: int
    v: int

    @property
    def affected_nodes(self) -> Tuple[int, ...]:
        """Nodes whose parent set changes"""
        if self.move_type == MoveType.REVERSE:
            return (self.u, self.v)
        return (self.v,)


class Dag(BaseModel):
    """
    Directed acyclic graph over q nodes labelled 0..q-1.

    Immutable after construction; the validator rejects self loops,
    out-of-range nodes, pairs present in both orientations and cycles.
    """
    model_config = ConfigDict(frozen=True)

    q: int = Field(gt=0)
    edges: FrozenSet[Edge] = Field(default_factory=frozenset)

    @model_validator(mode="after")
    def _check_structure(self):
        _check_pairs(self.q, self.edges, "edge")
        for u, v in self.edges:
            if (v, u) in self.edges:
                raise ValueError(f"both orientations of pair ({u}, {v}) are present")
        if topological_sort(self.q, self.edges) is None:
            raise ValueError("edge set contains a directed cycle")
        return self

    @classmethod
    def empty(cls, q: int) -> "Dag":
        return cls(q=q)

    @classmethod
    def from_adjacency(cls, adjacency: np.ndarray) -> "Dag":
        """Build from a q x q 0/1 matrix with A[u, v] = 1 for u -> v"""
        adjacency = np.asarray(adjacency)
        rows, cols = np.nonzero(adjacency)
        return cls(q=adjacency.shape[0], edges=frozenset((int(u), int(v)) for u, v in zip(rows, cols)))

    @property
    def adjacency(self) -> np.ndarray:
        """Boolean q x q matrix with A[u, v] = True for u -> v"""
        matrix = np.zeros((self.q, self.q), dtype=bool)
        for u, v in self.edges:
            matrix[u, v] = True
        matrix.setflags(write=False)
        return matrix

    @property
    def parent_sets(self) -> Tuple[Tuple[int, ...], ...]:
        """Sorted parent tuple of every node"""
        parents: List[List[int]] = [[] for _ in range(self.q)]
        for u, v in self.edges:
            parents[v].append(u)
        return tuple(tuple(sorted(p)) for p in parents)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def canonical_key(self) -> str:
        """Sorted ``u>v`` list, the hashable identity used for visit counts"""
        return " ".join(f"{u}>{v}" for u, v in sorted(self.edges))

    @classmethod
    def from_key(cls, q: int, key: str) -> "Dag":
        edges = set()
        for token in key.split():
            u, v = token.split(">")
            edges.add((int(u), int(v)))
        return cls(q=q, edges=frozenset(edges))


class EdgeConstraints(BaseModel):
    """
    Blacklist of directed pairs (u, v) that may never appear as u -> v.

    A DAG satisfies the constraints iff its edges do not intersect ``forbidden``.
    """
    model_config = ConfigDict(frozen=True)

    q: int = Field(gt=0)
    forbidden: FrozenSet[Edge] = Field(default_factory=frozenset)

    @model_validator(mode="after")
    def _check_forbidden(self):
        _check_pairs(self.q, self.forbidden, "forbidden pair")
        return self

    @classmethod
    def regression(cls, q: int, responses: Sequence[int]) -> "EdgeConstraints":
        """Response nodes may not have children (all their out-edges are forbidden)"""
        forbidden = {(int(u), v) for u in responses for v in range(q) if v != u}
        return cls(q=q, forbidden=frozenset(forbidden))

    @classmethod
    def exogenous(cls, q: int, nodes: Sequence[int]) -> "EdgeConstraints":
        """Exogenous nodes may not have parents"""
        forbidden = {(u, int(v)) for v in nodes for u in range(q) if u != v}
        return cls(q=q, forbidden=frozenset(forbidden))

    @classmethod
    def block(cls, q: int, block_a: Sequence[int], block_b: Sequence[int]) -> "EdgeConstraints":
        """Only edges within a block or from A to B: every B -> A edge is forbidden"""
        forbidden = {(int(b), int(a)) for a in block_a for b in block_b if a != b}
        return cls(q=q, forbidden=frozenset(forbidden))

    def union(self, other: "EdgeConstraints") -> "EdgeConstraints":
        if other.q != self.q:
            raise ValueError(f"cannot merge constraints over {self.q} and {other.q} nodes")
        return EdgeConstraints(q=self.q, forbidden=self.forbidden | other.forbidden)

    def allows(self, u: int, v: int) -> bool:
        return (u, v) not in self.forbidden

    def is_satisfied_by(self, dag: Dag) -> bool:
        return dag.q == self.q and not (dag.edges & self.forbidden)

    @property
    def mask(self) -> np.ndarray:
        """Boolean q x q matrix, True where u -> v is forbidden"""
        matrix = np.zeros((self.q, self.q), dtype=bool)
        for u, v in self.forbidden:
            matrix[u, v] = True
        matrix.setflags(write=False)
        return matrix


class Cpdag(BaseModel):
    """
    Completed partially directed acyclic graph of a Markov equivalence class.

    ``directed`` holds compelled edges, ``undirected`` holds reversible
    edges stored as (min, max) pairs.
    """
    model_config = ConfigDict(frozen=True)

    q: int = Field(gt=0)
    directed: FrozenSet[Edge] = Field(default_factory=frozenset)
    undirected: FrozenSet[Edge] = Field(default_factory=frozenset)

    @field_validator("undirected", mode="before")
    @classmethod
    def _normalize_undirected(cls, value):
        return frozenset((min(u, v), max(u, v)) for u, v in value)

    @model_validator(mode="after")
    def _check_disjoint(self):
        _check_pairs(self.q, self.directed, "directed edge")
        _check_pairs(self.q, self.undirected, "undirected edge")
        directed_pairs: Set[Edge] = {(min(u, v), max(u, v)) for u, v in self.directed}
        if len(directed_pairs) != len(self.directed):
            raise ValueError("a pair is directed both ways")
        if directed_pairs & self.undirected:
            raise ValueError("a pair is both directed and undirected")
        return self

    @property
    def n_edges(self) -> int:
        return len(self.directed) + len(self.undirected)
