"""Seeded random cCFG instances for differential testing."""

from __future__ import annotations

import random

from .graph import CCfg, ConstraintType, Digraph, validate_ccfg


def random_acyclic_ccfg(rng: random.Random, *, max_vertices: int = 8,
                        max_edges: int = 14, max_constraints: int = 3,
                        ctype: ConstraintType = ConstraintType.NEGATIVE,
                        allow_endpoint_constraints: bool = True) -> CCfg:
    """A random valid acyclic cCFG with random constraints.

    Vertices are laid out in a fixed topological order with the source first
    and the sink last; all edges point forward, so validity only needs every
    vertex wired to a predecessor and a successor.
    """
    n = rng.randint(3, max(3, max_vertices))
    names = [f"n{i:02d}" for i in range(n)]
    source, sink = names[0], names[-1]
    edges: set[tuple[str, str]] = set()
    for i in range(1, n):
        edges.add((names[rng.randrange(0, i)], names[i]))
    for i in range(n - 1):
        if not any(u == names[i] for u, _ in edges):
            edges.add((names[i], names[rng.randrange(i + 1, n)]))
    budget = max(len(edges), min(max_edges, n * (n - 1) // 2))
    attempts = 0
    while len(edges) < budget and attempts < 4 * budget:
        attempts += 1
        i = rng.randrange(0, n - 1)
        j = rng.randrange(i + 1, n)
        if (names[i], names[j]) == (source, sink) and n > 2 and rng.random() < 0.5:
            continue
        edges.add((names[i], names[j]))
    pool = names if allow_endpoint_constraints else names[1:-1]
    constraints: set[tuple[str, str]] = set()
    for _ in range(rng.randint(0, max_constraints)):
        x = rng.choice(pool)
        y = rng.choice(pool)
        if x == y:
            # a self-pair needs a repeated vertex to matter either way, and
            # these graphs are acyclic; keep the generated pairs irreflexive
            continue
        constraints.add((x, y))
    return validate_ccfg(Digraph(names, edges), source, sink, constraints, ctype)
