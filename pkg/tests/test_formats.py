import json

import pytest

from ccov import (CcfgValidationError, CnfFormula, ConstraintType,
                  parse_ccfg, parse_dimacs, parse_testset, write_ccfg,
                  write_testset)
from ccov.formats import (DocumentSyntaxError, HeaderMismatchError,
                          NotATestPathError, NotThreeLiteralsError)
from ccov.reductions import reduce_negative

from conftest import PROCUREMENT_PATHS, procurement_ccfg

MINIMAL = json.dumps({
    "vertices": ["s", "t"], "edges": [["s", "t"]],
    "source": "s", "sink": "t",
    "constraint_type": "negative", "constraints": [],
})


class TestCcfgDocuments:
    def test_minimal(self):
        g = parse_ccfg(MINIMAL)
        assert g.source == "s" and g.sink == "t"
        assert g.ctype is ConstraintType.NEGATIVE

    def test_unknown_constraint_type(self):
        doc = json.loads(MINIMAL)
        doc["constraint_type"] = "sometimes"
        with pytest.raises(DocumentSyntaxError):
            parse_ccfg(json.dumps(doc))

    def test_missing_key(self):
        doc = json.loads(MINIMAL)
        del doc["sink"]
        with pytest.raises(DocumentSyntaxError):
            parse_ccfg(json.dumps(doc))

    def test_not_json(self):
        with pytest.raises(DocumentSyntaxError):
            parse_ccfg("vertices: s, t")

    def test_invalid_graph_rejected_by_validation(self):
        doc = json.loads(MINIMAL)
        doc["vertices"].append("u")  # isolated
        with pytest.raises(CcfgValidationError):
            parse_ccfg(json.dumps(doc))

    def test_write_parse_round_trip(self):
        g = procurement_ccfg({("I", "F")}, ConstraintType.NEGATIVE)
        assert parse_ccfg(write_ccfg(g)) == g

    def test_reduction_round_trip(self):
        g = reduce_negative(CnfFormula(3, ((1, 2, 3),)))
        assert parse_ccfg(write_ccfg(g)) == g

    def test_canonical_form_is_idempotent(self):
        g = parse_ccfg(MINIMAL)
        once = write_ccfg(g)
        assert write_ccfg(parse_ccfg(once)) == once


class TestTestsetDocuments:
    def test_reference_paths(self):
        g = procurement_ccfg()
        text = write_testset(PROCUREMENT_PATHS)
        parsed = parse_testset(text, g)
        assert len(parsed) == 3
        assert set(parsed) == set(PROCUREMENT_PATHS)

    def test_empty(self):
        g = procurement_ccfg()
        assert parse_testset("[]", g) == ()

    def test_path_not_starting_at_source(self):
        g = procurement_ccfg()
        with pytest.raises(NotATestPathError) as exc:
            parse_testset(json.dumps([["B", "C", "E", "G", "H", "I", "J"]]), g)
        assert exc.value.index == 0

    def test_path_with_missing_edge(self):
        g = procurement_ccfg()
        with pytest.raises(NotATestPathError):
            parse_testset(json.dumps([["A", "J"]]), g)


class TestDimacs:
    def test_basic(self):
        f = parse_dimacs("p cnf 3 1\n1 2 3 0\n")
        assert f == CnfFormula(3, ((1, 2, 3),))

    def test_comments_skipped(self):
        f = parse_dimacs("c a comment\np cnf 2 1\nc another\n1 -2 2 0\n")
        assert f.clauses == ((1, -2, 2),)

    def test_two_literal_clause(self):
        with pytest.raises(NotThreeLiteralsError):
            parse_dimacs("p cnf 2 1\n1 -2 0\n")

    def test_repeated_literal_allowed_here(self):
        f = parse_dimacs("p cnf 1 1\n1 1 -1 0\n")
        assert f.clauses == ((1, 1, -1),)

    def test_header_mismatch(self):
        with pytest.raises(HeaderMismatchError):
            parse_dimacs("p cnf 3 2\n1 2 3 0\n")

    def test_missing_header(self):
        with pytest.raises(DocumentSyntaxError):
            parse_dimacs("1 2 3 0\n")
