"""Parsing and serialization: cCFG documents, test sets, DIMACS CNF.

cCFG and test-set documents are JSON; the canonical form sorts vertices and
edges and uses two-space indentation, so write-then-parse is the identity
and golden files stay stable.
"""

from __future__ import annotations

import json
import warnings

from .graph import (CCfg, CcovError, ConstraintType, Digraph, Path,
                    UnknownVertexError, edges_of, validate_ccfg)
from .reductions import CnfFormula, NotThreeCnfError
from .semantics import TestSet, make_testset


class DocumentSyntaxError(CcovError):
    pass


class NotATestPathError(CcovError):
    def __init__(self, index: int, reason: str):
        self.index = index
        super().__init__(f"path {index}: {reason}")


class HeaderMismatchError(CcovError):
    pass


class NotThreeLiteralsError(CcovError):
    def __init__(self, clause_index: int):
        self.clause_index = clause_index
        super().__init__(f"clause {clause_index} does not have exactly 3 literals")


_CTYPE_NAMES = {t.value: t for t in ConstraintType}


def parse_ccfg(text: str) -> CCfg:
    """Parse and validate a .ccfg.json document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"invalid JSON at line {exc.lineno}") from exc
    if not isinstance(doc, dict):
        raise DocumentSyntaxError("top-level value must be an object")
    for key in ("vertices", "edges", "source", "sink", "constraint_type", "constraints"):
        if key not in doc:
            raise DocumentSyntaxError(f"missing key: {key}")
    ctype_name = doc["constraint_type"]
    if ctype_name not in _CTYPE_NAMES:
        raise DocumentSyntaxError(f"unknown constraint_type: {ctype_name!r}")
    vertices = doc["vertices"]
    if not all(isinstance(v, str) and v and not any(ch.isspace() for ch in v)
               for v in vertices):
        raise DocumentSyntaxError("vertex ids must be non-empty strings without whitespace")

    def pairs(items, what) -> list[tuple[str, str]]:
        out = []
        for item in items:
            if not (isinstance(item, list) and len(item) == 2
                    and all(isinstance(x, str) for x in item)):
                raise DocumentSyntaxError(f"each {what} must be a [from, to] pair")
            out.append((item[0], item[1]))
        return out

    edge_list = pairs(doc["edges"], "edge")
    if len(edge_list) != len(set(edge_list)):
        warnings.warn("duplicate edges in document collapsed", stacklevel=2)
    try:
        graph = Digraph(vertices, edge_list)
    except UnknownVertexError as exc:
        raise DocumentSyntaxError(str(exc)) from exc
    return validate_ccfg(graph, doc["source"], doc["sink"],
                         pairs(doc["constraints"], "constraint"),
                         _CTYPE_NAMES[ctype_name])


def write_ccfg(g: CCfg) -> str:
    doc = {
        "vertices": sorted(g.graph.vertices),
        "edges": [list(e) for e in sorted(g.graph.edges)],
        "source": g.source,
        "sink": g.sink,
        "constraint_type": g.ctype.value,
        "constraints": [list(c) for c in sorted(g.constraints)],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_testset(text: str, g: CCfg) -> TestSet:
    """Parse a .paths.json document, rejecting anything that is not a test path of g."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"invalid JSON at line {exc.lineno}") from exc
    if not isinstance(doc, list):
        raise DocumentSyntaxError("top-level value must be a list of paths")
    paths: list[Path] = []
    for idx, item in enumerate(doc):
        if not (isinstance(item, list) and all(isinstance(v, str) for v in item)):
            raise DocumentSyntaxError(f"path {idx} must be a list of vertex ids")
        p = tuple(item)
        for v in p:
            if v not in g.graph.vertices:
                raise UnknownVertexError(v)
        if len(p) < 2 or p[0] != g.source:
            raise NotATestPathError(idx, "does not start at the source")
        if p[-1] != g.sink:
            raise NotATestPathError(idx, "does not end at the sink")
        for e in edges_of(p):
            if e not in g.graph.edges:
                raise NotATestPathError(idx, f"step {e} is not an edge")
        paths.append(p)
    return make_testset(paths)


def write_testset(ts: TestSet) -> str:
    return json.dumps([list(p) for p in make_testset(ts)], indent=2) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    """Standard DIMACS CNF restricted to exactly-3-literal clauses."""
    header: tuple[int, int] | None = None
    tokens: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DocumentSyntaxError(f"bad problem line at line {lineno}")
            if header is not None:
                raise DocumentSyntaxError("duplicate problem line")
            header = (int(parts[2]), int(parts[3]))
            continue
        try:
            tokens.extend(int(tok) for tok in line.split())
        except ValueError as exc:
            raise DocumentSyntaxError(f"bad literal at line {lineno}") from exc
    if header is None:
        raise DocumentSyntaxError("missing problem line")
    var_count, clause_count = header
    clauses: list[tuple[int, int, int]] = []
    current: list[int] = []
    for tok in tokens:
        if tok == 0:
            if len(current) != 3:
                raise NotThreeLiteralsError(len(clauses) + 1)
            clauses.append((current[0], current[1], current[2]))
            current = []
        else:
            current.append(tok)
    if current:
        raise DocumentSyntaxError("unterminated clause")
    if len(clauses) != clause_count:
        raise HeaderMismatchError(
            f"header declares {clause_count} clauses, found {len(clauses)}")
    try:
        f = CnfFormula(var_count, tuple(clauses))
    except NotThreeCnfError as exc:
        raise HeaderMismatchError(str(exc)) from exc
    return f
