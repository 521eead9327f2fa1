"""Admissibility and edge-coverage checking for test sets.

This is the polynomial-time verifier: given a cCFG and a candidate test
set, it reports uncovered edges and every constraint violation.  All five
constraint types are interpreted through occurrence indices (i < j), so
adjacent occurrences and endpoint occurrences count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import CCfg, CcovError, ConstraintType, Edge, Path, Vertex, edges_of, is_path

TestSet = tuple[Path, ...]


class ForeignPathError(CcovError):
    """A member of the test set is not a test path of the graph."""


def make_testset(paths: Iterable[Path]) -> TestSet:
    """Canonical test set: duplicate-free, sorted."""
    return tuple(sorted(set(tuple(p) for p in paths)))


def precedes(p: Path, x: Vertex, y: Vertex) -> bool:
    """True iff some occurrence of x is strictly before some occurrence of y."""
    try:
        i = p.index(x)
    except ValueError:
        return False
    return y in p[i + 1:]


def single_witness(p: Path, x: Vertex, y: Vertex) -> bool:
    """Single-occurrence side condition for ONCE / MAX-ONCE witnesses.

    Holds iff there are indices i < j with p[i]=x, p[j]=y such that x occurs
    exactly once before j and y occurs exactly once after i.
    """
    xs = [i for i, v in enumerate(p) if v == x]
    ys = [j for j, v in enumerate(p) if v == y]
    for i in xs:
        for j in ys:
            if i < j \
                    and sum(1 for i2 in xs if i2 < j) == 1 \
                    and sum(1 for j2 in ys if j2 > i) == 1:
                return True
    return False


@dataclass(frozen=True)
class Violation:
    constraint: tuple[Vertex, Vertex]
    kind: str
    path: Path | None = None


@dataclass(frozen=True)
class CheckReport:
    uncovered_edges: tuple[Edge, ...]
    violations: tuple[Violation, ...]

    @property
    def admissible(self) -> bool:
        return not self.violations

    @property
    def achieves_ec(self) -> bool:
        return not self.uncovered_edges


def _require_test_paths(ts: Iterable[Path], g: CCfg) -> list[Path]:
    paths = sorted(set(tuple(p) for p in ts))
    for p in paths:
        if len(p) < 2 or p[0] != g.source or p[-1] != g.sink or not is_path(g.graph, p):
            raise ForeignPathError(f"not a test path of the graph: {p}")
    return paths


def is_admissible(ts: Iterable[Path], g: CCfg) -> list[Violation]:
    """All constraint violations of ts under g's constraint type (empty = admissible)."""
    paths = _require_test_paths(ts, g)
    out: list[Violation] = []
    for x, y in sorted(g.constraints):
        c = (x, y)
        witnesses = [p for p in paths if precedes(p, x, y)]
        if g.ctype is ConstraintType.POSITIVE:
            if not witnesses:
                out.append(Violation(c, "no_witness"))
        elif g.ctype is ConstraintType.NEGATIVE:
            if witnesses:
                out.append(Violation(c, "forbidden_precedence", witnesses[0]))
        elif g.ctype in (ConstraintType.ONCE, ConstraintType.MAX_ONCE):
            if len(witnesses) > 1:
                out.append(Violation(c, "multiple_witnesses", witnesses[1]))
            elif len(witnesses) == 1 and not single_witness(witnesses[0], x, y):
                out.append(Violation(c, "witness_conditions_failed", witnesses[0]))
            elif not witnesses and g.ctype is ConstraintType.ONCE:
                out.append(Violation(c, "no_witness"))
        elif g.ctype is ConstraintType.ALWAYS:
            for p in paths:
                bad = any(y not in p[i + 1:] for i, v in enumerate(p) if v == x)
                if bad:
                    out.append(Violation(c, "not_followed", p))
                    break
    return out


def achieves_ec(ts: Iterable[Path], g: CCfg) -> list[Edge]:
    """Edges of g not covered by any path in ts, in sorted order."""
    paths = _require_test_paths(ts, g)
    covered: set[Edge] = set()
    for p in paths:
        covered.update(edges_of(p))
    return sorted(g.graph.edges - covered)


def check(ts: Iterable[Path], g: CCfg) -> CheckReport:
    """Combined admissibility + coverage verdict (polynomial time)."""
    return CheckReport(
        uncovered_edges=tuple(achieves_ec(ts, g)),
        violations=tuple(is_admissible(ts, g)),
    )
