"""Directed graphs, path algebra, and validated constrained CFGs.

A constrained CFG (cCFG) is a digraph with a unique source (no in-edges),
a unique sink (no out-edges), every vertex on some source-sink path, a set
of vertex pairs acting as constraints, and a constraint type that fixes
how those pairs restrict admissible test sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple

Vertex = str
Edge = tuple[Vertex, Vertex]
Path = tuple[Vertex, ...]


class CcovError(Exception):
    """Base class for all errors raised by this package."""


class UnknownVertexError(CcovError):
    pass


class NoJoiningEdgeError(CcovError):
    pass


class CcfgValidationError(CcovError):
    """Raised when a graph fails cCFG validation; carries every violation."""

    def __init__(self, violations: Iterable[str]):
        self.violations = tuple(violations)
        super().__init__("; ".join(self.violations))


class ConstraintType(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    ONCE = "once"
    MAX_ONCE = "max_once"
    ALWAYS = "always"


class Digraph:
    """Immutable directed graph over string vertex ids.

    Self-loops are permitted; parallel edges are not (edges form a set).
    Adjacency lists are kept sorted so every traversal is deterministic.
    """

    __slots__ = ("vertices", "edges", "_succ", "_pred")

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Edge]):
        self.vertices: frozenset[Vertex] = frozenset(vertices)
        self.edges: frozenset[Edge] = frozenset((u, v) for u, v in edges)
        for u, v in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise UnknownVertexError(f"edge ({u}, {v}) has endpoint outside the vertex set")
        succ: dict[Vertex, list[Vertex]] = {v: [] for v in self.vertices}
        pred: dict[Vertex, list[Vertex]] = {v: [] for v in self.vertices}
        for u, v in sorted(self.edges):
            succ[u].append(v)
            pred[v].append(u)
        self._succ = succ
        self._pred = pred

    def successors(self, v: Vertex) -> list[Vertex]:
        if v not in self.vertices:
            raise UnknownVertexError(v)
        return self._succ[v]

    def predecessors(self, v: Vertex) -> list[Vertex]:
        if v not in self.vertices:
            raise UnknownVertexError(v)
        return self._pred[v]

    def d_in(self, v: Vertex) -> int:
        return len(self.predecessors(v))

    def d_out(self, v: Vertex) -> int:
        return len(self.successors(v))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Digraph({sorted(self.vertices)!r}, {sorted(self.edges)!r})"


def reachable_set(g: Digraph, start: Vertex) -> set[Vertex]:
    """All vertices reachable from ``start`` (including ``start`` itself)."""
    if start not in g.vertices:
        raise UnknownVertexError(start)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.successors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def co_reachable_set(g: Digraph, goal: Vertex) -> set[Vertex]:
    """All vertices from which ``goal`` is reachable (including ``goal``)."""
    if goal not in g.vertices:
        raise UnknownVertexError(goal)
    seen = {goal}
    stack = [goal]
    while stack:
        v = stack.pop()
        for w in g.predecessors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def reachable(g: Digraph, v: Vertex, w: Vertex) -> bool:
    """True iff some path leads from v to w; every vertex reaches itself."""
    if w not in g.vertices:
        raise UnknownVertexError(w)
    return w in reachable_set(g, v)


def bfs_path(g: Digraph, start: Vertex, goal: Vertex,
             allowed: set[Vertex] | frozenset[Vertex] | None = None) -> Path | None:
    """Shortest path from start to goal, or None.

    When ``allowed`` is given, every vertex after the first must lie in it;
    the start vertex itself may be outside (it is usable as a departure point
    only).  Neighbors are expanded in sorted order, so ties break
    deterministically.
    """
    if start == goal:
        return (start,)
    universe = g.vertices if allowed is None else allowed
    if goal not in universe:
        return None
    parent: dict[Vertex, Vertex] = {}
    frontier = [start]
    seen = {start}
    while frontier:
        nxt = []
        for v in frontier:
            for w in g.successors(v):
                if w in seen or w not in universe:
                    continue
                seen.add(w)
                parent[w] = v
                if w == goal:
                    path = [w]
                    while path[-1] != start:
                        path.append(parent[path[-1]])
                    return tuple(reversed(path))
                nxt.append(w)
        frontier = nxt
    return None


def has_cycle(g: Digraph) -> bool:
    """Detect a directed cycle (iterative three-color DFS)."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {v: WHITE for v in g.vertices}
    for root in sorted(g.vertices):
        if color[root] != WHITE:
            continue
        stack: list[tuple[Vertex, int]] = [(root, 0)]
        color[root] = GRAY
        while stack:
            v, i = stack.pop()
            succs = g.successors(v)
            if i < len(succs):
                stack.append((v, i + 1))
                w = succs[i]
                if color[w] == GRAY:
                    return True
                if color[w] == WHITE:
                    color[w] = GRAY
                    stack.append((w, 0))
            else:
                color[v] = BLACK
    return False


class Occurrence(NamedTuple):
    count: int
    first: int  # 1-based, 0 when absent
    last: int   # 1-based, 0 when absent


def occurrences(v: Vertex, p: Path) -> Occurrence:
    """Occurrence count of v in p with 1-based first/last indices (0 if absent)."""
    idx = [i + 1 for i, w in enumerate(p) if w == v]
    if not idx:
        return Occurrence(0, 0, 0)
    return Occurrence(len(idx), idx[0], idx[-1])


def edges_of(p: Path) -> list[Edge]:
    """Consecutive-pair edge list; empty for a single-vertex path."""
    return [(p[i], p[i + 1]) for i in range(len(p) - 1)]


def is_path(g: Digraph, p: Path) -> bool:
    """True iff p is a nonempty vertex sequence whose steps are all edges of g."""
    if len(p) < 1:
        return False
    if any(v not in g.vertices for v in p):
        return False
    return all(e in g.edges for e in edges_of(p))


def concat(g: Digraph, p: Path, q: Path) -> Path:
    """Join p and q through the edge (last of p, first of q)."""
    if (p[-1], q[0]) not in g.edges:
        raise NoJoiningEdgeError(f"no edge ({p[-1]}, {q[0]})")
    return p + q


@dataclass(frozen=True)
class CCfg:
    """A validated constrained control-flow graph.

    Construct through :func:`validate_ccfg`; direct construction skips the
    structural checks.
    """

    graph: Digraph
    source: Vertex
    sink: Vertex
    constraints: frozenset[tuple[Vertex, Vertex]]
    ctype: ConstraintType


def validate_ccfg(graph: Digraph, source: Vertex, sink: Vertex,
                  constraints: Iterable[tuple[Vertex, Vertex]],
                  ctype: ConstraintType) -> CCfg:
    """Check every cCFG invariant, reporting all violations at once.

    Raises :class:`CcfgValidationError` listing each failed invariant:
    TooFewVertices, SourceEqualsSink, UnknownVertex, SourceHasInEdge,
    SinkHasOutEdge, UnreachableVertex(v), CannotReachSink(v),
    ConstraintEndpointNotInV.
    """
    constraints = frozenset((x, y) for x, y in constraints)
    violations: list[str] = []
    if len(graph.vertices) < 2:
        violations.append("TooFewVertices")
    if source == sink:
        violations.append("SourceEqualsSink")
    for name, v in (("source", source), ("sink", sink)):
        if v not in graph.vertices:
            violations.append(f"UnknownVertex({name}={v})")
    if violations:
        raise CcfgValidationError(violations)
    if graph.d_in(source) > 0:
        violations.append("SourceHasInEdge")
    if graph.d_out(sink) > 0:
        violations.append("SinkHasOutEdge")
    forward = reachable_set(graph, source)
    backward = co_reachable_set(graph, sink)
    for v in sorted(graph.vertices):
        if v not in forward:
            violations.append(f"UnreachableVertex({v})")
        if v not in backward:
            violations.append(f"CannotReachSink({v})")
    for x, y in sorted(constraints):
        if x not in graph.vertices or y not in graph.vertices:
            violations.append(f"ConstraintEndpointNotInV(({x}, {y}))")
    if violations:
        raise CcfgValidationError(violations)
    return CCfg(graph=graph, source=source, sink=sink,
                constraints=constraints, ctype=ctype)
