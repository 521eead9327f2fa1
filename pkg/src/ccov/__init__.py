"""Edge-coverage test sets for constraint-extended control-flow graphs."""

from .graph import (CCfg, CcfgValidationError, CcovError, ConstraintType,
                    Digraph, Edge, Path, Vertex, concat, edges_of, occurrences,
                    reachable, validate_ccfg)
from .semantics import (CheckReport, ForeignPathError, TestSet, Violation,
                        achieves_ec, check, is_admissible, make_testset, precedes)
from .positive import (InfeasibleConstraintError, WrongConstraintTypeError,
                       base_ec_testset, solve_positive)
from .negative import (ConstraintSequence, constraint_vertices,
                       enumerate_sequences, find_proper_path,
                       has_ec_with_negative, is_c_proper, lambda_c)
from .exact import (BudgetExceededError, ExactResult, PathBudget,
                    admissible_paths_for_edge, enumerate_test_paths, solve_exact)
from .reductions import (Assignment, CnfFormula, OracleMode, decode_assignment,
                         encode_witness, reduce_always, reduce_formula,
                         reduce_maxonce, reduce_negative, reduce_once, sat_oracle)
from .formats import (parse_ccfg, parse_dimacs, parse_testset, write_ccfg,
                      write_testset)

__version__ = "0.1.0"

__all__ = [
    "Assignment", "BudgetExceededError", "CCfg", "CcfgValidationError",
    "CcovError", "CheckReport", "CnfFormula", "ConstraintSequence",
    "ConstraintType", "Digraph", "Edge", "ExactResult", "ForeignPathError",
    "InfeasibleConstraintError", "OracleMode", "Path", "PathBudget", "TestSet",
    "Vertex", "Violation", "WrongConstraintTypeError", "achieves_ec",
    "admissible_paths_for_edge", "base_ec_testset", "check", "concat",
    "constraint_vertices", "decode_assignment", "edges_of", "encode_witness",
    "enumerate_sequences", "enumerate_test_paths", "find_proper_path",
    "has_ec_with_negative", "is_admissible", "is_c_proper", "lambda_c",
    "make_testset", "occurrences", "parse_ccfg", "parse_dimacs",
    "parse_testset", "precedes", "reachable", "reduce_always",
    "reduce_formula", "reduce_maxonce", "reduce_negative", "reduce_once",
    "sat_oracle", "solve_exact", "solve_positive", "validate_ccfg",
    "write_ccfg", "write_testset",
]
