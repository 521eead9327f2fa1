"""Exhaustive decision solver for desk-scale instances.

Enumerates budget-bounded test paths and decides feasibility for every
constraint type.  On acyclic graphs with an edge-repetition bound of 1 the
enumeration is exactly the set of all test paths, so the decision is sound
and complete; on cyclic graphs results are explicitly budget-bounded.

This module is the independent oracle the faster solvers are validated
against, so it deliberately shares no search machinery with them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .graph import (CCfg, CcovError, ConstraintType, Edge, Path, Vertex,
                    edges_of, has_cycle)
from .positive import InfeasibleConstraintError, WrongConstraintTypeError, solve_positive
from .semantics import TestSet, make_testset, precedes, single_witness


class BudgetExceededError(CcovError):
    pass


@dataclass(frozen=True)
class PathBudget:
    """Bounds that make path enumeration finite on cyclic graphs."""

    max_edge_repetition: int = 2
    max_paths_considered: int = 100_000

    def __post_init__(self):
        if self.max_edge_repetition < 1:
            raise ValueError("max_edge_repetition must be >= 1")


@dataclass(frozen=True)
class ExactResult:
    decision: bool
    witness: TestSet | None
    budget_bounded: bool


def enumerate_test_paths(g: CCfg, budget: PathBudget = PathBudget()) -> list[Path]:
    """All test paths using every edge at most max_edge_repetition times.

    Deterministic DFS order; raises BudgetExceededError past the path cap.
    """
    results: list[Path] = []
    used: Counter[Edge] = Counter()
    path: list[Vertex] = [g.source]

    def dfs(v: Vertex) -> None:
        if v == g.sink:
            if len(results) >= budget.max_paths_considered:
                raise BudgetExceededError(budget.max_paths_considered)
            results.append(tuple(path))
            return
        for w in g.graph.successors(v):
            e = (v, w)
            if used[e] < budget.max_edge_repetition:
                used[e] += 1
                path.append(w)
                dfs(w)
                path.pop()
                used[e] -= 1

    dfs(g.source)
    return results


def path_respects(p: Path, g: CCfg) -> bool:
    """Per-path admissibility for the universally-quantified types."""
    if g.ctype is ConstraintType.NEGATIVE:
        return all(not precedes(p, x, y) for x, y in g.constraints)
    if g.ctype is ConstraintType.ALWAYS:
        for x, y in g.constraints:
            for i, v in enumerate(p):
                if v == x and y not in p[i + 1:]:
                    return False
        return True
    raise WrongConstraintTypeError(g.ctype)


def admissible_paths_for_edge(g: CCfg, e: Edge,
                              budget: PathBudget = PathBudget()) -> list[Path]:
    """Budget-bounded test paths through e that individually satisfy every constraint."""
    if g.ctype not in (ConstraintType.NEGATIVE, ConstraintType.ALWAYS):
        raise WrongConstraintTypeError(g.ctype)
    out = []
    for p in enumerate_test_paths(g, budget):
        if e in edges_of(p) and path_respects(p, g):
            out.append(p)
    return out


def _solve_per_path_type(g: CCfg, budget: PathBudget) -> tuple[bool, TestSet | None]:
    # NEGATIVE and ALWAYS are per-path properties, closed under union:
    # feasible iff every edge lies on some individually-admissible path.
    paths = [p for p in enumerate_test_paths(g, budget) if path_respects(p, g)]
    by_edge: dict[Edge, Path] = {}
    for p in paths:
        for e in edges_of(p):
            by_edge.setdefault(e, p)
    witness = []
    for e in sorted(g.graph.edges):
        if e not in by_edge:
            return False, None
        witness.append(by_edge[e])
    return True, make_testset(witness)


def _solve_once_like(g: CCfg, budget: PathBudget) -> tuple[bool, TestSet | None]:
    exactly_one = g.ctype is ConstraintType.ONCE
    constraints = sorted(g.constraints)
    universe = []
    for p in sorted(enumerate_test_paths(g, budget)):
        wit = set()
        usable = True
        for cst in constraints:
            if precedes(p, *cst):
                if single_witness(p, *cst):
                    wit.add(cst)
                else:
                    # witnesses the pair but breaks the single-occurrence
                    # side condition: such a path can never be selected
                    usable = False
                    break
        if usable:
            universe.append((p, frozenset(wit)))
    if exactly_one:
        for cst in constraints:
            if not any(cst in wit for _, wit in universe):
                return False, None

    all_edges = sorted(g.graph.edges)
    covering: dict[Edge, list[int]] = {e: [] for e in all_edges}
    for idx, (p, _) in enumerate(universe):
        for e in set(edges_of(p)):
            covering[e].append(idx)
    # prefer constraint-free paths when covering
    order_key = {idx: (len(universe[idx][1]), idx) for idx in range(len(universe))}
    for e in covering:
        covering[e].sort(key=order_key.__getitem__)

    def compatible(idx: int, taken: set) -> bool:
        return not (universe[idx][1] & taken)

    def slot_bound_ok(uncovered: set[Edge], taken: set) -> bool:
        # every still-selectable witnessing path consumes at least one unused
        # constraint slot; edges coverable only by witnessing paths therefore
        # bound how many such edges can still be handled
        slots = len(constraints) - len(taken)
        chosen: list[Edge] = []
        for e in sorted(uncovered):
            cands = [i for i in covering[e] if compatible(i, taken)]
            if not cands:
                return False
            if any(not universe[i][1] for i in cands):
                continue
            if all(not (set(edges_of(universe[i][0])) & set(chosen)) for i in cands):
                chosen.append(e)
                if len(chosen) > slots:
                    return False
        return True

    def finish_once(taken: set, selected: list[int]) -> list[int] | None:
        missing = [cst for cst in constraints if cst not in taken]
        if not missing:
            return selected

        def extend(i: int, taken: set, selected: list[int]) -> list[int] | None:
            if i == len(missing):
                return selected
            cst = missing[i]
            if cst in taken:
                return extend(i + 1, taken, selected)
            for idx in range(len(universe)):
                wit = universe[idx][1]
                if cst in wit and not (wit & taken):
                    r = extend(i + 1, taken | wit, selected + [idx])
                    if r is not None:
                        return r
            return None

        return extend(0, taken, selected)

    def search(uncovered: set[Edge], taken: set, selected: list[int]
               ) -> list[int] | None:
        if not uncovered:
            return finish_once(taken, selected) if exactly_one else selected
        if not slot_bound_ok(uncovered, taken):
            return None
        e = min(uncovered,
                key=lambda e: (len([i for i in covering[e] if compatible(i, taken)]), e))
        for idx in covering[e]:
            if not compatible(idx, taken):
                continue
            p, wit = universe[idx]
            r = search(uncovered - set(edges_of(p)), taken | wit, selected + [idx])
            if r is not None:
                return r
        return None

    picked = search(set(all_edges), set(), [])
    if picked is None:
        return False, None
    return True, make_testset(universe[i][0] for i in picked)


def solve_exact(g: CCfg, budget: PathBudget = PathBudget()) -> ExactResult:
    """Exhaustive decision for any constraint type.

    The result is flagged budget-bounded on cyclic graphs, where a negative
    decision only means "no solution within the enumeration budget".
    """
    bounded = has_cycle(g.graph)
    if g.ctype is ConstraintType.POSITIVE:
        try:
            return ExactResult(True, solve_positive(g), False)
        except InfeasibleConstraintError:
            return ExactResult(False, None, False)
    if g.ctype in (ConstraintType.NEGATIVE, ConstraintType.ALWAYS):
        decision, witness = _solve_per_path_type(g, budget)
    else:
        decision, witness = _solve_once_like(g, budget)
    return ExactResult(decision, witness, bounded)
