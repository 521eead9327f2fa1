"""Polynomial-time solver for POSITIVE constraints.

Builds a base edge-covering test set from shortest connecting paths, then
adds one path (s .. x .. y .. t) per constraint.  A POSITIVE instance is
feasible exactly when every constraint (x, y) satisfies the reachability
chain s ~> x, x ~> y, y ~> t.
"""

from __future__ import annotations

from .graph import CCfg, CcovError, ConstraintType, Path, Vertex, bfs_path, edges_of
from .semantics import TestSet, make_testset


class WrongConstraintTypeError(CcovError):
    pass


class InfeasibleConstraintError(CcovError):
    """A constraint fails the reachability chain; no admissible EC test set exists."""

    def __init__(self, constraint: tuple[Vertex, Vertex]):
        self.constraint = constraint
        super().__init__(f"infeasible constraint {constraint}")


def _join(*segments: Path) -> Path:
    out = segments[0]
    for seg in segments[1:]:
        out = out + seg[1:] if out[-1] == seg[0] else out + seg
    return out


def base_ec_testset(g: CCfg) -> TestSet:
    """An edge-covering test set for the bare graph, constraints ignored.

    For each not-yet-covered edge (u, v), emits shortest(s, u) + (u, v) +
    shortest(v, t); edges already covered by earlier emissions are skipped.
    """
    covered = set()
    paths = []
    for u, v in sorted(g.graph.edges):
        if (u, v) in covered:
            continue
        head = bfs_path(g.graph, g.source, u)
        tail = bfs_path(g.graph, v, g.sink)
        assert head is not None and tail is not None  # guaranteed by cCFG validity
        p = _join(head, (u, v), tail)
        paths.append(p)
        covered.update(edges_of(p))
    return make_testset(paths)


def solve_positive(g: CCfg) -> TestSet:
    """EC-achieving, admissible test set for a POSITIVE instance.

    Raises InfeasibleConstraintError with the first (sorted) constraint whose
    reachability chain fails; in that case no admissible EC test set exists.
    """
    if g.ctype is not ConstraintType.POSITIVE:
        raise WrongConstraintTypeError(g.ctype)
    extra = []
    for x, y in sorted(g.constraints):
        a = bfs_path(g.graph, g.source, x)
        b = bfs_path(g.graph, x, y)
        c = bfs_path(g.graph, y, g.sink)
        if a is None or b is None or c is None:
            raise InfeasibleConstraintError((x, y))
        p = _join(a, b, c)
        if x == y:
            # the chain collapses to a single occurrence; route through a
            # second visit of y so that x strictly precedes y
            loop = None
            for w in g.graph.successors(x):
                back = bfs_path(g.graph, w, y)
                if back is not None:
                    loop = (x,) + back
                    break
            if loop is None:
                raise InfeasibleConstraintError((x, y))
            p = _join(a, loop, c)
        extra.append(p)
    return make_testset(base_ec_testset(g) + tuple(extra))
