"""FPT decision procedure for NEGATIVE constraints.

A NEGATIVE constraint (x, y) forbids any test path with x before y.  A
single path respects all such constraints exactly when it is "proper" for
some repetition-free sequence c over the constraint vertices in which, for
every constraint with both endpoints present, the right endpoint is ordered
before the left one.  The solver enumerates all such sequences (the
parameter-bounded part), greedily covers edges with proper paths, and
accepts iff the accumulated paths achieve edge coverage.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator

from .graph import (CCfg, CcovError, ConstraintType, Edge, Path, Vertex,
                    bfs_path, edges_of)
from .positive import WrongConstraintTypeError
from .semantics import TestSet, make_testset

Constraints = frozenset[tuple[Vertex, Vertex]]


class VertexNotInSequenceError(CcovError):
    pass


def constraint_vertices(constraints: Iterable[tuple[Vertex, Vertex]]) -> set[Vertex]:
    """Union of all constraint endpoints."""
    out: set[Vertex] = set()
    for x, y in constraints:
        out.add(x)
        out.add(y)
    return out


@dataclass(frozen=True)
class ConstraintSequence:
    """A repetition-free ordering of some constraint vertices."""

    entries: tuple[Vertex, ...]

    def index(self, x: Vertex) -> int:
        """1-based position of x, 0 when absent."""
        try:
            return self.entries.index(x) + 1
        except ValueError:
            return 0

    @property
    def vertex_set(self) -> frozenset[Vertex]:
        return frozenset(self.entries)

    def __contains__(self, x: Vertex) -> bool:
        return x in self.entries


def _sequence_ok(entries: tuple[Vertex, ...],
                 constraints: Iterable[tuple[Vertex, Vertex]]) -> bool:
    pos = {v: i for i, v in enumerate(entries)}
    for x, y in constraints:
        if x in pos and y in pos and not pos[y] < pos[x]:
            return False
    return True


def enumerate_sequences(constraints: Iterable[tuple[Vertex, Vertex]]
                        ) -> Iterator[ConstraintSequence]:
    """All admissible constraint sequences, shortest first, then lexicographic.

    A sequence is admissible when for every constraint (x, y) with both
    endpoints present, y comes before x.
    """
    constraints = list(constraints)
    cv = sorted(constraint_vertices(constraints))
    for k in range(len(cv) + 1):
        for entries in permutations(cv, k):
            if _sequence_ok(entries, constraints):
                yield ConstraintSequence(entries)


def lambda_c(c: ConstraintSequence, y, constraints: Iterable[tuple[Vertex, Vertex]]
             ) -> set[Vertex]:
    """Left endpoints present in c of constraints whose right endpoint is y.

    Accepts a single vertex (must be in c) or an iterable of vertices.
    These are the vertices "unlocked" once y's last occurrence is placed.
    """
    constraints = list(constraints)
    if isinstance(y, str):
        if y not in c:
            raise VertexNotInSequenceError(y)
        ys = [y]
    else:
        ys = list(y)
    return {x for x, yy in constraints if yy in ys and x in c}


def is_c_proper(p: Path, c: ConstraintSequence,
                constraints: Iterable[tuple[Vertex, Vertex]]) -> bool:
    """The three properness conditions.

    1. the constraint vertices on p are exactly those of c;
    2. last occurrences on p follow c's order;
    3. for every constraint (x, y) with both endpoints in c, the last y
       occurs strictly before the first x.
    """
    constraints = list(constraints)
    cv = constraint_vertices(constraints)
    if set(p) & cv != set(c.entries):
        return False
    last = {v: i for i, v in enumerate(p)}
    for a, b in zip(c.entries, c.entries[1:]):
        if not last[a] < last[b]:
            return False
    first: dict[Vertex, int] = {}
    for i in range(len(p) - 1, -1, -1):
        first[p[i]] = i
    for x, y in constraints:
        if x in c and y in c and not last[y] < first[x]:
            return False
    return True


def _contains_edge(p: Path, e: Edge) -> bool:
    u, v = e
    return any(p[i] == u and p[i + 1] == v for i in range(len(p) - 1))


def _segment_through(g: CCfg, start: Vertex, goal: Vertex,
                     allowed: set[Vertex], e: Edge) -> Path | None:
    """start -> u, edge (u, v), v -> goal, all intermediate vertices in allowed."""
    u, v = e
    if v not in allowed:
        return None
    head = (start,) if u == start else bfs_path(g.graph, start, u, allowed)
    if head is None:
        return None
    tail = bfs_path(g.graph, v, goal, allowed)
    if tail is None:
        return None
    if (u, v) not in g.graph.edges:
        return None
    return head + tail


def find_proper_path(g: CCfg, c: ConstraintSequence, e: Edge,
                     ) -> Path | None:
    """A c-proper test path containing edge e, or None if none exists.

    Works over a shrinking induced subgraph: initially only constraint
    vertices with no pending right-endpoint obligation are usable; consuming
    each entry of c removes it and unlocks the left endpoints it was blocking,
    unless some other still-present right endpoint keeps them blocked.
    """
    if g.ctype is not ConstraintType.NEGATIVE:
        raise WrongConstraintTypeError(g.ctype)
    constraints = g.constraints
    cv_all = constraint_vertices(constraints)
    cset = set(c.entries)
    blocked_initial = lambda_c(c, c.entries, constraints) if c.entries else set()
    d0 = cset - blocked_initial
    allowed = (set(g.graph.vertices) - cv_all) | d0
    if g.source not in allowed:
        # the source appears on every test path, so a c-proper path exists
        # only if it is usable from the start
        return None
    p: Path = (g.source,)
    for cj in c.entries:
        seg: Path | None = None
        if not _contains_edge(p, e):
            seg = _segment_through(g, p[-1], cj, allowed, e)
        if seg is None:
            seg = bfs_path(g.graph, p[-1], cj, allowed)
        if seg is None:
            return None
        remaining = (allowed & cset) - {cj}
        still_blocked = lambda_c(c, remaining, constraints) if remaining else set()
        unlocked = lambda_c(c, cj, constraints) - still_blocked
        allowed = (allowed - {cj}) | unlocked
        p = p + seg[1:]
    if not _contains_edge(p, e):
        seg = _segment_through(g, p[-1], g.sink, allowed, e)
    else:
        seg = bfs_path(g.graph, p[-1], g.sink, allowed)
    if seg is None:
        return None
    return p + seg[1:]


def has_ec_with_negative(g: CCfg, trace: list | None = None
                         ) -> tuple[bool, TestSet | None]:
    """Decide EC feasibility under NEGATIVE constraints; witness on success.

    Iterates admissible constraint sequences, greedily covering still-uncovered
    edges with proper paths.  Stops early once every edge is covered.  When
    ``trace`` is given, every (sequence, edge, result) probe is appended to it.
    """
    if g.ctype is not ConstraintType.NEGATIVE:
        raise WrongConstraintTypeError(g.ctype)
    all_edges = set(g.graph.edges)
    covered: set[Edge] = set()
    paths: list[Path] = []
    for c in enumerate_sequences(g.constraints):
        for e in sorted(all_edges):
            if e in covered:
                continue
            p = find_proper_path(g, c, e)
            if trace is not None:
                trace.append((c, e, p))
            if p is not None:
                if p not in paths:
                    paths.append(p)
                covered.update(edges_of(p))
        if covered == all_edges:
            break
    if covered == all_edges:
        return True, make_testset(paths)
    return False, None
