import json

import pytest

from ccov import ConstraintType, write_ccfg, write_testset
from ccov.cli import main

from conftest import PROCUREMENT_PATHS, build_ccfg, procurement_ccfg

BYPASS_EDGES = [("s", "a"), ("s", "b"), ("a", "t"), ("b", "t"), ("b", "a")]


@pytest.fixture
def procurement_file(tmp_path):
    g = procurement_ccfg({("I", "F")}, ConstraintType.NEGATIVE)
    path = tmp_path / "proc.ccfg.json"
    path.write_text(write_ccfg(g))
    return path


@pytest.fixture
def paths_file(tmp_path):
    path = tmp_path / "paths.paths.json"
    path.write_text(write_testset(PROCUREMENT_PATHS))
    return path


class TestValidate:
    def test_valid(self, procurement_file, capsys):
        assert main(["validate", str(procurement_file)]) == 0
        assert "valid" in capsys.readouterr().out

    def test_invalid_graph(self, tmp_path, capsys):
        doc = {"vertices": ["s", "t", "u"], "edges": [["s", "t"]],
               "source": "s", "sink": "t",
               "constraint_type": "negative", "constraints": []}
        path = tmp_path / "bad.ccfg.json"
        path.write_text(json.dumps(doc))
        assert main(["validate", str(path)]) == 1
        assert "UnreachableVertex" in capsys.readouterr().out

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "junk.ccfg.json"
        path.write_text("not json at all")
        assert main(["validate", str(path)]) == 2

    def test_missing_file(self, tmp_path):
        assert main(["validate", str(tmp_path / "nope.json")]) == 2


class TestCheck:
    def test_reference_fixture(self, procurement_file, paths_file):
        assert main(["check", str(procurement_file), str(paths_file)]) == 0

    def test_violating_path_named(self, procurement_file, tmp_path, capsys):
        # a fourth path audits (I) before a later funding step (F)
        bad = PROCUREMENT_PATHS + (
            ("A", "B", "C", "E", "G", "H", "I", "C", "F", "G", "I", "J"),)
        pf = tmp_path / "bad.paths.json"
        pf.write_text(write_testset(bad))
        assert main(["check", str(procurement_file), str(pf)]) == 1
        assert "forbidden_precedence" in capsys.readouterr().out

    def test_missing_coverage(self, procurement_file, tmp_path, capsys):
        pf = tmp_path / "short.paths.json"
        pf.write_text(write_testset(PROCUREMENT_PATHS[:1]))
        assert main(["check", str(procurement_file), str(pf)]) == 1
        assert "uncovered" in capsys.readouterr().out

    def test_json_report(self, procurement_file, paths_file, capsys):
        assert main(["check", str(procurement_file), str(paths_file),
                     "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["admissible"] and report["achieves_ec"]


class TestSolve:
    def test_solve_then_check(self, tmp_path):
        g = build_ccfg(BYPASS_EDGES, {("a", "b")})
        gf = tmp_path / "g.ccfg.json"
        gf.write_text(write_ccfg(g))
        out = tmp_path / "ts.paths.json"
        assert main(["solve", str(gf), "--out", str(out)]) == 0
        assert main(["check", str(gf), str(out)]) == 0

    def test_forced_infeasible(self, tmp_path, capsys):
        g = build_ccfg([("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")],
                       {("s", "a")})
        gf = tmp_path / "g.ccfg.json"
        gf.write_text(write_ccfg(g))
        assert main(["solve", str(gf)]) == 1
        assert "no admissible" in capsys.readouterr().out

    def test_explicit_methods_agree(self, tmp_path, capsys):
        g = build_ccfg(BYPASS_EDGES, {("a", "b")})
        gf = tmp_path / "g.ccfg.json"
        gf.write_text(write_ccfg(g))
        for method in ("fpt", "exact"):
            assert main(["solve", str(gf), "--method", method]) == 0

    def test_positive_pipeline(self, tmp_path):
        g = build_ccfg(BYPASS_EDGES, {("b", "a")}, ConstraintType.POSITIVE)
        gf = tmp_path / "g.ccfg.json"
        gf.write_text(write_ccfg(g))
        out = tmp_path / "ts.paths.json"
        assert main(["solve", str(gf), "--out", str(out)]) == 0
        assert main(["check", str(gf), str(out)]) == 0

    def test_bad_threads_env(self, tmp_path, monkeypatch):
        g = build_ccfg(BYPASS_EDGES)
        gf = tmp_path / "g.ccfg.json"
        gf.write_text(write_ccfg(g))
        monkeypatch.setenv("CCOV_THREADS", "lots")
        assert main(["solve", str(gf)]) == 2


class TestReduce:
    def test_negative_counts(self, tmp_path):
        cnf = tmp_path / "f.cnf"
        cnf.write_text("p cnf 3 1\n1 2 3 0\n")
        out = tmp_path / "g.ccfg.json"
        assert main(["reduce", str(cnf), "--theorem", "negative",
                     "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert len(doc["vertices"]) == 13

    def test_once_precondition(self, tmp_path, capsys):
        cnf = tmp_path / "f.cnf"
        cnf.write_text("p cnf 1 1\n1 1 1 0\n")
        assert main(["reduce", str(cnf), "--theorem", "once"]) == 2
        assert "RepeatedLiteral" in capsys.readouterr().err

    def test_always_precondition(self, tmp_path):
        cnf = tmp_path / "f.cnf"
        cnf.write_text("p cnf 3 1\n-1 2 3 0\n")
        assert main(["reduce", str(cnf), "--theorem", "always"]) == 2


class TestOracle:
    def test_satisfiable(self, tmp_path, capsys):
        cnf = tmp_path / "f.cnf"
        cnf.write_text("p cnf 3 1\n1 2 3 0\n")
        assert main(["oracle", str(cnf)]) == 0
        assert "satisfiable" in capsys.readouterr().out

    def test_unsatisfiable(self, tmp_path):
        cnf = tmp_path / "f.cnf"
        cnf.write_text("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n")
        assert main(["oracle", str(cnf)]) == 1

    def test_mode_precondition(self, tmp_path):
        cnf = tmp_path / "f.cnf"
        cnf.write_text("p cnf 3 1\n-1 2 3 0\n")
        assert main(["oracle", str(cnf), "--mode", "1in3"]) == 2


class TestFuzz:
    def test_small_run_agrees(self, tmp_path):
        assert main(["fuzz", "--seed", "1", "--count", "15",
                     "--out-dir", str(tmp_path)]) == 0
        assert not list(tmp_path.glob("fuzz-disagreement-*"))

    def test_zero_count(self, tmp_path, capsys):
        assert main(["fuzz", "--count", "0", "--out-dir", str(tmp_path)]) == 0
        assert "0 instances" in capsys.readouterr().out


class TestUsage:
    def test_unknown_command(self):
        assert main(["frobnicate"]) == 2

    def test_no_command(self):
        assert main([]) == 2
