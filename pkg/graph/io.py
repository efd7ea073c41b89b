"""
Edge-list text formats for graphs and structural constraints.

Graphs::

    q=3
    X1 X2          # directed X1 -> X2
    X2 -- X3       # undirected (CPDAG only)

Constraints use the same pair lines for forbidden directed edges plus
the directives ``response <node>``, ``exogenous <node>`` and
``block A:<n1>,<n2> B:<n3>,...``. Nodes are column labels when a label
list is supplied, 0-based indices otherwise.
"""
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Set, Union

from errors import GraphFormatError
from models import Cpdag, Dag, Edge, EdgeConstraints

Graph = Union[Dag, Cpdag]


def _node_name(v: int, labels: Optional[Sequence[str]]) -> str:
    return labels[v] if labels else str(v)


def _resolve(token: str, q: int, labels: Optional[Sequence[str]], line: int) -> int:
    if labels:
        index = {label: j for j, label in enumerate(labels)}
        if token in index:
            return index[token]
    try:
        v = int(token)
    except ValueError:
        raise GraphFormatError(f"unknown node '{token}'", line=line) from None
    if not 0 <= v < q:
        raise GraphFormatError(f"node index {v} outside 0..{q - 1}", line=line)
    return v


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _parse_header(line: str, number: int) -> Optional[int]:
    if not line.startswith("q="):
        return None
    try:
        q = int(line[2:])
    except ValueError:
        raise GraphFormatError(f"malformed header '{line}'", line=number) from None
    if q <= 0:
        raise GraphFormatError("q must be positive", line=number)
    return q


def format_graph(graph: Graph, labels: Optional[Sequence[str]] = None) -> str:
    lines = [f"q={graph.q}"]
    directed = graph.edges if isinstance(graph, Dag) else graph.directed
    for u, v in sorted(directed):
        lines.append(f"{_node_name(u, labels)} {_node_name(v, labels)}")
    if isinstance(graph, Cpdag):
        for u, v in sorted(graph.undirected):
            lines.append(f"{_node_name(u, labels)} -- {_node_name(v, labels)}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str, labels: Optional[Sequence[str]] = None) -> Graph:
    """A Dag unless an undirected ``--`` line is present, then a Cpdag"""
    q = None
    directed: Set[Edge] = set()
    undirected: Set[Edge] = set()
    for number, line in _content_lines(text):
        if q is None:
            q = _parse_header(line, number)
            if q is None:
                raise GraphFormatError("first line must be the header q=<int>", line=number)
            if labels and len(labels) != q:
                raise GraphFormatError(f"header says q={q} but {len(labels)} labels given", line=number)
            continue
        tokens = line.split()
        if len(tokens) == 3 and tokens[1] == "--":
            u = _resolve(tokens[0], q, labels, number)
            v = _resolve(tokens[2], q, labels, number)
            undirected.add((min(u, v), max(u, v)))
        elif len(tokens) == 2:
            directed.add((_resolve(tokens[0], q, labels, number), _resolve(tokens[1], q, labels, number)))
        else:
            raise GraphFormatError(f"expected 'u v' or 'u -- v', got '{line}'", line=number)
    if q is None:
        raise GraphFormatError("empty graph file: missing header q=<int>")

    try:
        if undirected:
            return Cpdag(q=q, directed=frozenset(directed), undirected=frozenset(undirected))
        return Dag(q=q, edges=frozenset(directed))
    except ValueError as exc:
        raise GraphFormatError(f"invalid graph: {exc}") from exc


def write_graph(graph: Graph, path, labels: Optional[Sequence[str]] = None) -> Path:
    path = Path(path)
    path.write_text(format_graph(graph, labels))
    return path


def write_edge_list(q: int, edges: Iterable[Edge], path, labels: Optional[Sequence[str]] = None) -> Path:
    """Directed pairs in the graph format; cycles and both orientations are kept"""
    lines = [f"q={q}"] + [f"{_node_name(u, labels)} {_node_name(v, labels)}" for u, v in sorted(edges)]
    path = Path(path)
    path.write_text("\n".join(lines) + "\n")
    return path


def read_graph(path, labels: Optional[Sequence[str]] = None) -> Graph:
    return parse_graph(Path(path).read_text(), labels)


def _parse_block_side(token: str, prefix: str, q: int, labels, number: int) -> List[int]:
    if not token.startswith(prefix):
        raise GraphFormatError(f"expected '{prefix}<nodes>', got '{token}'", line=number)
    names = [name for name in token[len(prefix):].split(",") if name]
    if not names:
        raise GraphFormatError(f"empty node list in '{token}'", line=number)
    return [_resolve(name, q, labels, number) for name in names]


def parse_constraints(text: str, q: int, labels: Optional[Sequence[str]] = None) -> EdgeConstraints:
    constraints = EdgeConstraints(q=q)
    forbidden: Set[Edge] = set()
    for number, line in _content_lines(text):
        header = _parse_header(line, number)
        if header is not None:
            if header != q:
                raise GraphFormatError(f"constraints declare q={header} for data with {q} columns", line=number)
            continue
        tokens = line.split()
        keyword = tokens[0].lower()
        if keyword in ("response", "exogenous"):
            if len(tokens) < 2:
                raise GraphFormatError(f"'{keyword}' needs at least one node", line=number)
            nodes = [_resolve(token, q, labels, number) for token in tokens[1:]]
            extra = (
                EdgeConstraints.regression(q, nodes)
                if keyword == "response"
                else EdgeConstraints.exogenous(q, nodes)
            )
            constraints = constraints.union(extra)
        elif keyword == "block":
            if len(tokens) != 3:
                raise GraphFormatError("expected 'block A:<nodes> B:<nodes>'", line=number)
            block_a = _parse_block_side(tokens[1], "A:", q, labels, number)
            block_b = _parse_block_side(tokens[2], "B:", q, labels, number)
            constraints = constraints.union(EdgeConstraints.block(q, block_a, block_b))
        elif len(tokens) == 2:
            u = _resolve(tokens[0], q, labels, number)
            v = _resolve(tokens[1], q, labels, number)
            if u == v:
                raise GraphFormatError(f"self loop '{line}'", line=number)
            forbidden.add((u, v))
        else:
            raise GraphFormatError(f"unrecognised constraint '{line}'", line=number)
    return constraints.union(EdgeConstraints(q=q, forbidden=frozenset(forbidden)))


def format_constraints(constraints: EdgeConstraints, labels: Optional[Sequence[str]] = None) -> str:
    lines = [f"q={constraints.q}"]
    for u, v in sorted(constraints.forbidden):
        lines.append(f"{_node_name(u, labels)} {_node_name(v, labels)}")
    return "\n".join(lines) + "\n"


def read_constraints(path, q: int, labels: Optional[Sequence[str]] = None) -> EdgeConstraints:
    return parse_constraints(Path(path).read_text(), q, labels)


def write_constraints(constraints: EdgeConstraints, path, labels: Optional[Sequence[str]] = None) -> Path:
    path = Path(path)
    path.write_text(format_constraints(constraints, labels))
    return path
