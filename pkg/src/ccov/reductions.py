"""SAT to cCFG reduction builders, witness encoders, and assignment decoders.

Four constructions turn a 3-CNF formula into a cCFG whose edge-coverage
problem (under the matching constraint type) is equivalent to satisfiability:

* NEGATIVE  -- clause gadgets chained through "blue" vertices with "red"
  bypasses; constraints forbid mixing red and blue on one path and forbid
  complementary literal vertices on one path.
* MAX_ONCE  -- clause gadgets in sequence behind a wide entry fan; each
  complementary cross-gadget pair may be exercised by at most one path.
* ONCE      -- same graph as MAX_ONCE (requires pairwise-distinct literals
  per clause); every pair must be exercised by exactly one path.
* ALWAYS    -- for positive formulas under 1-in-3 semantics: a clause spine
  guarded by a chain of forced follow-ups, feeding a variable-assignment
  chain of true/false vertices.

A brute-force SAT oracle cross-validates everything.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .graph import CCfg, CcovError, ConstraintType, Digraph, Path, validate_ccfg
from .semantics import TestSet, make_testset, precedes

Assignment = dict[int, bool]


class NotThreeCnfError(CcovError):
    pass


class RepeatedLiteralInClauseError(CcovError):
    pass


class ModePreconditionError(CcovError):
    pass


class AssignmentDoesNotSatisfyError(CcovError):
    pass


class NoDecodablePathError(CcovError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    """A 3-CNF formula; literals are signed 1-based variable indices."""

    variable_count: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.variable_count < 1:
            raise NotThreeCnfError("at least one variable required")
        for idx, clause in enumerate(self.clauses):
            if len(clause) != 3:
                raise NotThreeCnfError(f"clause {idx + 1} does not have 3 literals")
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise NotThreeCnfError(f"literal {lit} out of range in clause {idx + 1}")


class OracleMode(str, Enum):
    THREE_SAT = "3sat"
    ONE_IN_THREE_POSITIVE = "1in3"


def _check_1in3_preconditions(f: CnfFormula) -> None:
    if any(lit < 0 for clause in f.clauses for lit in clause):
        raise ModePreconditionError("1-in-3 mode requires positive literals only")
    seen = {abs(lit) for clause in f.clauses for lit in clause}
    missing = set(range(1, f.variable_count + 1)) - seen
    if missing:
        raise ModePreconditionError(f"variables in no clause: {sorted(missing)}")


def assignment_satisfies(f: CnfFormula, a: Assignment, mode: OracleMode) -> bool:
    for clause in f.clauses:
        true_count = sum(1 for lit in clause if a[abs(lit)] == (lit > 0))
        if mode is OracleMode.THREE_SAT:
            if true_count == 0:
                return False
        else:
            if true_count != 1:
                return False
    return True


def sat_oracle(f: CnfFormula, mode: OracleMode = OracleMode.THREE_SAT
               ) -> tuple[bool, Assignment | None]:
    """Brute force over all assignments; first satisfying one (all-false first)."""
    if mode is OracleMode.ONE_IN_THREE_POSITIVE:
        _check_1in3_preconditions(f)
    for bits in itertools.product((False, True), repeat=f.variable_count):
        a = {i + 1: b for i, b in enumerate(bits)}
        if assignment_satisfies(f, a, mode):
            return True, a
    return False, None


def _gadget_vertex(i: int, j: int) -> str:
    return f"v{i}_{j}"


def reduce_negative(f: CnfFormula) -> CCfg:
    """NEGATIVE reduction: satisfiable iff an EC test set exists."""
    n = len(f.clauses)
    if n == 0:
        raise NotThreeCnfError("empty formula")
    vertices = {"s", "t"}
    edges: set[tuple[str, str]] = set()
    blue = [f"b{i}" for i in range(1, n + 2)]
    red: list[str] = []
    for i in range(1, n + 1):
        vi, wi = f"v{i}", f"w{i}"
        vertices.update({vi, wi})
        for j in (1, 2, 3):
            vij = _gadget_vertex(i, j)
            vertices.add(vij)
            edges.add((vi, vij))
            edges.add((vij, wi))
        for r in (f"p{i}", f"q{i}", f"y{i}", f"z{i}"):
            red.append(r)
            vertices.add(r)
        edges.update({("s", f"p{i}"), ("s", f"q{i}"), (f"p{i}", vi), (f"q{i}", vi),
                      (wi, f"y{i}"), (wi, f"z{i}"), (f"y{i}", "t"), (f"z{i}", "t")})
    vertices.update(blue)
    edges.add(("s", blue[0]))
    edges.add((blue[n], "t"))
    for i in range(1, n + 1):
        edges.add((f"w{i}", blue[i]))
        edges.add((blue[i - 1], f"v{i}"))

    constraints: set[tuple[str, str]] = set()
    for r in red:
        for b in blue:
            constraints.add((r, b))
            constraints.add((b, r))
    constraints.update(_complementary_pairs(f, ordered_both_ways=True))
    return validate_ccfg(Digraph(vertices, edges), "s", "t", constraints,
                         ConstraintType.NEGATIVE)


def _complementary_pairs(f: CnfFormula, ordered_both_ways: bool
                         ) -> set[tuple[str, str]]:
    """Vertex pairs whose literals are each other's negation.

    With ordered_both_ways, all ordered pairs; otherwise only pairs with the
    first clause index strictly smaller.
    """
    n = len(f.clauses)
    out: set[tuple[str, str]] = set()
    for i1, i2 in itertools.product(range(1, n + 1), repeat=2):
        if not ordered_both_ways and not i1 < i2:
            continue
        for j1, j2 in itertools.product((1, 2, 3), repeat=2):
            if f.clauses[i1 - 1][j1 - 1] == -f.clauses[i2 - 1][j2 - 1]:
                out.add((_gadget_vertex(i1, j1), _gadget_vertex(i2, j2)))
    return out


def _fan_size(n: int) -> int:
    return (3 * n) ** 2 + 1


def reduce_maxonce(f: CnfFormula) -> CCfg:
    """MAX_ONCE reduction: clause gadget chain behind a wide entry fan."""
    n = len(f.clauses)
    if n == 0:
        raise NotThreeCnfError("empty formula")
    vertices = {"s", "t"}
    edges: set[tuple[str, str]] = set()
    for i in range(1, n + 1):
        vi, wi = f"v{i}", f"w{i}"
        vertices.update({vi, wi})
        for j in (1, 2, 3):
            vij = _gadget_vertex(i, j)
            vertices.add(vij)
            edges.add((vi, vij))
            edges.add((vij, wi))
        if i < n:
            edges.add((wi, f"v{i + 1}"))
    for b in range(1, _fan_size(n) + 1):
        vertices.add(f"b{b}")
        edges.add(("s", f"b{b}"))
        edges.add((f"b{b}", "v1"))
    edges.add((f"w{n}", "t"))
    constraints = _complementary_pairs(f, ordered_both_ways=False)
    return validate_ccfg(Digraph(vertices, edges), "s", "t", constraints,
                         ConstraintType.MAX_ONCE)


def reduce_once(f: CnfFormula) -> CCfg:
    """ONCE reduction: same graph as MAX_ONCE, distinct literals per clause."""
    for idx, clause in enumerate(f.clauses):
        if len(set(clause)) != 3:
            raise RepeatedLiteralInClauseError(f"clause {idx + 1}: {clause}")
    g = reduce_maxonce(f)
    return CCfg(graph=g.graph, source=g.source, sink=g.sink,
                constraints=g.constraints, ctype=ConstraintType.ONCE)


def reduce_always(f: CnfFormula) -> CCfg:
    """ALWAYS reduction for positive formulas under 1-in-3 semantics."""
    _check_1in3_preconditions(f)
    for idx, clause in enumerate(f.clauses):
        if len({abs(lit) for lit in clause}) != 3:
            raise ModePreconditionError(f"clause {idx + 1} needs 3 distinct variables")
    n = len(f.clauses)
    k = f.variable_count
    vertices = {"s", "t"} | {f"z{i}" for i in range(1, n + 2)} \
        | {f"y{i}" for i in range(1, k + 1)}
    edges: set[tuple[str, str]] = {("s", "z1"), (f"z{n + 1}", "y1")}
    for i in range(1, n + 1):
        vi, wi = f"v{i}", f"w{i}"
        vertices.update({vi, wi})
        edges.add((f"z{i}", vi))
        edges.add((wi, f"z{i + 1}"))
        edges.add(("s", vi))
        edges.add((wi, "y1"))
        for j in (1, 2, 3):
            vij = _gadget_vertex(i, j)
            vertices.add(vij)
            edges.add((vi, vij))
            edges.add((vij, wi))
    for i in range(1, k + 1):
        xt, xf = f"x{i}t", f"x{i}f"
        vertices.update({xt, xf})
        edges.add((f"y{i}", xt))
        edges.add((f"y{i}", xf))
        nxt = "t" if i == k else f"y{i + 1}"
        edges.add((xt, nxt))
        edges.add((xf, nxt))

    constraints: set[tuple[str, str]] = {(f"z{i}", f"z{i + 1}") for i in range(1, n + 1)}
    for j in range(1, n + 1):
        vars_in_clause = [abs(lit) for lit in f.clauses[j - 1]]
        for a in (1, 2, 3):
            for pos, var in enumerate(vars_in_clause, start=1):
                suffix = "t" if pos == a else "f"
                constraints.add((_gadget_vertex(j, a), f"x{var}{suffix}"))
    return validate_ccfg(Digraph(vertices, edges), "s", "t", constraints,
                         ConstraintType.ALWAYS)


def _mode_for(kind: ConstraintType) -> OracleMode:
    return OracleMode.ONE_IN_THREE_POSITIVE if kind is ConstraintType.ALWAYS \
        else OracleMode.THREE_SAT


def reduce_formula(f: CnfFormula, kind: ConstraintType) -> CCfg:
    builders = {
        ConstraintType.NEGATIVE: reduce_negative,
        ConstraintType.MAX_ONCE: reduce_maxonce,
        ConstraintType.ONCE: reduce_once,
        ConstraintType.ALWAYS: reduce_always,
    }
    if kind not in builders:
        raise ModePreconditionError(f"no reduction for {kind}")
    return builders[kind](f)


def _chosen_positions(f: CnfFormula, a: Assignment) -> list[int]:
    """Per clause, the smallest literal position made true by a (1-based)."""
    out = []
    for clause in f.clauses:
        pos = next(j for j, lit in enumerate(clause, start=1)
                   if a[abs(lit)] == (lit > 0))
        out.append(pos)
    return out


def _gadget_chain(f: CnfFormula, b: str, choices: list[int]) -> Path:
    """s -> b -> gadget 1 .. gadget n -> t in the fan-entry graphs."""
    n = len(f.clauses)
    p: list[str] = ["s", b]
    for i in range(1, n + 1):
        p.extend([f"v{i}", _gadget_vertex(i, choices[i - 1]), f"w{i}"])
    p.append("t")
    return tuple(p)


def _encode_negative(f: CnfFormula, a: Assignment) -> TestSet:
    n = len(f.clauses)
    choices = _chosen_positions(f, a)
    blue: list[str] = ["s"]
    for i in range(1, n + 1):
        blue.extend([f"b{i}", f"v{i}", _gadget_vertex(i, choices[i - 1]), f"w{i}"])
    blue.extend([f"b{n + 1}", "t"])
    paths: list[Path] = [tuple(blue)]
    for i in range(1, n + 1):
        others = [j for j in (1, 2, 3) if j != choices[i - 1]]
        paths.append(("s", f"p{i}", f"v{i}", _gadget_vertex(i, others[0]),
                      f"w{i}", f"y{i}", "t"))
        paths.append(("s", f"q{i}", f"v{i}", _gadget_vertex(i, others[1]),
                      f"w{i}", f"z{i}", "t"))
    return make_testset(paths)


def _encode_maxonce(f: CnfFormula, a: Assignment) -> TestSet:
    n = len(f.clauses)
    fan = _fan_size(n)
    base = _chosen_positions(f, a)
    paths = [_gadget_chain(f, f"b{b}", base) for b in range(1, fan)]
    for j in (1, 2, 3):
        paths.append(_gadget_chain(f, f"b{fan}", [j] * n))
    return make_testset(paths)


def _encode_once(f: CnfFormula, a: Assignment) -> TestSet:
    n = len(f.clauses)
    fan = _fan_size(n)
    base = _chosen_positions(f, a)

    b_iter = iter(range(1, fan + 1))

    def next_b() -> str:
        try:
            return f"b{next(b_iter)}"
        except StopIteration:  # cannot happen at 3-CNF sizes; keep total anyway
            return "b1"

    def true_form(var: int) -> int:
        return var if a[var] else -var

    paths: list[Path] = [_gadget_chain(f, next_b(), base)]
    for var in range(1, f.variable_count + 1):
        tf = true_form(var)
        choices = list(base)
        hit = False
        for i, clause in enumerate(f.clauses):
            if tf in clause:
                choices[i] = clause.index(tf) + 1
                hit = True
        if hit:
            paths.append(_gadget_chain(f, next_b(), choices))
        # one path per occurrence of the false form, witnessing exactly the
        # pairs between that vertex and the true-form vertices
        for i, clause in enumerate(f.clauses):
            for j, lit in enumerate(clause, start=1):
                if lit == -tf:
                    mod = list(choices)
                    mod[i] = j
                    paths.append(_gadget_chain(f, next_b(), mod))
    for b in b_iter:
        paths.append(_gadget_chain(f, f"b{b}", base))
    return make_testset(paths)


def _encode_always(f: CnfFormula, a: Assignment) -> TestSet:
    n = len(f.clauses)
    k = f.variable_count

    def green_tail(true_var: int | None, by_assignment: bool) -> list[str]:
        out = []
        for var in range(1, k + 1):
            out.append(f"y{var}")
            if by_assignment:
                suffix = "t" if a[var] else "f"
            else:
                suffix = "t" if var == true_var else "f"
            out.append(f"x{var}{suffix}")
        out.append("t")
        return out

    paths: list[Path] = []
    for i in range(1, n + 1):
        for pos, lit in enumerate(f.clauses[i - 1], start=1):
            p = ["s", f"v{i}", _gadget_vertex(i, pos), f"w{i}"]
            p.extend(green_tail(true_var=abs(lit), by_assignment=False))
            paths.append(tuple(p))
    spine = ["s"]
    for i in range(1, n + 1):
        clause = f.clauses[i - 1]
        pos = next(j for j, lit in enumerate(clause, start=1) if a[abs(lit)])
        spine.extend([f"z{i}", f"v{i}", _gadget_vertex(i, pos), f"w{i}"])
    spine.append(f"z{n + 1}")
    spine.extend(green_tail(true_var=None, by_assignment=True))
    paths.append(tuple(spine))
    return make_testset(paths)


def encode_witness(f: CnfFormula, a: Assignment, kind: ConstraintType) -> TestSet:
    """The constructive test set showing the forward direction of each reduction."""
    mode = _mode_for(kind)
    if mode is OracleMode.ONE_IN_THREE_POSITIVE:
        _check_1in3_preconditions(f)
    if not assignment_satisfies(f, a, mode):
        raise AssignmentDoesNotSatisfyError(str(a))
    encoders = {
        ConstraintType.NEGATIVE: _encode_negative,
        ConstraintType.MAX_ONCE: _encode_maxonce,
        ConstraintType.ONCE: _encode_once,
        ConstraintType.ALWAYS: _encode_always,
    }
    if kind not in encoders:
        raise ModePreconditionError(f"no witness encoding for {kind}")
    return encoders[kind](f, a)


def _read_gadget_choices(f: CnfFormula, p: Path) -> Assignment:
    a: Assignment = {var: False for var in range(1, f.variable_count + 1)}
    forced: dict[int, bool] = {}
    for i, clause in enumerate(f.clauses, start=1):
        choice = next((j for j in (1, 2, 3) if _gadget_vertex(i, j) in p), None)
        if choice is None:
            raise NoDecodablePathError(f"path skips gadget {i}")
        lit = clause[choice - 1]
        var, val = abs(lit), lit > 0
        if forced.get(var, val) != val:
            raise NoDecodablePathError(f"conflicting choices for variable {var}")
        forced[var] = val
    a.update(forced)
    return a


def decode_assignment(f: CnfFormula, g: CCfg, witness: TestSet,
                      kind: ConstraintType) -> Assignment:
    """Extract a satisfying assignment from an EC-achieving admissible witness.

    Needs the originating formula to interpret gadget choices; unconstrained
    variables default to False.
    """
    paths = make_testset(witness)
    if kind is ConstraintType.NEGATIVE:
        chain = next((p for p in paths if len(p) > 1 and p[1] == "b1"), None)
        if chain is None:
            raise NoDecodablePathError("no path starting with the entry chain edge")
        return _read_gadget_choices(f, chain)
    if kind in (ConstraintType.MAX_ONCE, ConstraintType.ONCE):
        for p in paths:
            if not any(precedes(p, x, y) for x, y in g.constraints):
                return _read_gadget_choices(f, p)
        raise NoDecodablePathError("every path exercises some restricted pair")
    if kind is ConstraintType.ALWAYS:
        spine = next((p for p in paths
                      if ("s", "z1") in zip(p, p[1:])), None)
        if spine is None:
            raise NoDecodablePathError("no path through the spine entry edge")
        a: Assignment = {}
        for var in range(1, f.variable_count + 1):
            if f"x{var}t" in spine:
                a[var] = True
            elif f"x{var}f" in spine:
                a[var] = False
            else:
                raise NoDecodablePathError(f"spine decides neither value of variable {var}")
        return a
    raise ModePreconditionError(f"no decoding for {kind}")
