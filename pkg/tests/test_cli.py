"""End-to-end tests for the domlab command line"""

import json

import pytest

from domlab.cli import main
from domlab.core.engine import InvariantEngine
from domlab.graph.spec import generate


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


class TestCompute:
    def test_autonomous_path7(self, capsys):
        code, data = run_json(capsys, "compute", "path:7", "autonomous")
        assert code == 0
        assert data["value"] == 5
        assert data["status"] == "ok"
        assert data["certificate"]["kind"] == "family"

    @pytest.mark.parametrize("spec, invariant, expected", [
        ("E:3,3", "eternal", 6),
        ("A:2", "gamma", 1),
        ("cart(complete:2,complete:5)", "autonomous", 2),
        ("path:6", "foolproof", 5),
    ])
    def test_values(self, capsys, spec, invariant, expected):
        code, data = run_json(capsys, "compute", spec, invariant)
        assert (code, data["value"]) == (0, expected)

    def test_human_output(self, capsys):
        code, out, _ = run(capsys, "compute", "path:7", "gamma")
        assert code == 0
        assert "gamma(path:7) = 3" in out
        assert "certificate" in out

    def test_cap_exit_code(self, capsys):
        code, data = run_json(capsys, "compute", "path:7", "autonomous", "--cap", "1")
        assert code == 3
        assert data["status"] == "unknown"
        assert data["value"] is None

    def test_bad_spec_is_usage_error(self, capsys):
        code, out, err = run(capsys, "compute", "path:x", "gamma")
        assert code == 2
        assert "column 6" in err

    def test_bad_spec_json(self, capsys):
        code, data = run_json(capsys, "compute", "cycle:2", "gamma")
        assert code == 2
        assert data["exit_code"] == 2
        assert "cycle" in data["error"]

    def test_unknown_invariant_is_usage_error(self, capsys):
        assert run(capsys, "compute", "path:7", "treewidth")[0] == 2

    def test_cache_agrees_with_fresh_computation(self, capsys, tmp_path):
        _, first = run_json(capsys, "compute", "house9", "eternal")
        _, cached = run_json(capsys, "compute", "house9", "eternal")
        _, fresh = run_json(capsys, "compute", "house9", "eternal", "--no-cache")
        assert (tmp_path / "cache.jsonl").exists()
        assert len((tmp_path / "cache.jsonl").read_text().splitlines()) == 1
        for record in (cached, fresh):
            assert {k: v for k, v in record.items() if k != "wall_time"} == {
                k: v for k, v in first.items() if k != "wall_time"
            }


class TestProfile:
    def test_house9_rows(self, capsys):
        code, data = run_json(capsys, "profile", "house9", "--kmax", "4")
        assert code == 0
        rows = {row["k"]: row for row in data["rows"]}
        assert rows[2]["feasible"] is True
        assert rows[3]["feasible"] is False

    def test_table_output(self, capsys):
        code, out, _ = run(capsys, "profile", "path:4")
        assert code == 0
        assert "Autonomous feasibility" in out
        assert "feasible at [2" in out

    def test_capped_rows(self, capsys):
        code, data = run_json(capsys, "profile", "path:7", "--kmax", "5", "--cap", "8")
        assert code == 3
        assert data["rows"][1]["feasible"] is None


class TestRefute:
    def test_house9(self, capsys):
        code, data = run_json(capsys, "refute", "house9", "3", "b_1,a_3,a_4")
        assert code == 0
        assert data["trajectory"]["failed"]
        assert data["trajectory"]["failing_attacks"]

    def test_table_output(self, capsys):
        code, out, _ = run(capsys, "refute", "house9", "3", "b_1,a_3,a_4")
        assert code == 0
        assert "is not secure" in out

    def test_secure_start_is_a_mismatch(self, capsys):
        representative = InvariantEngine(generate("path:7")).autonomous_feasible(5)[1].representative
        start = ",".join(str(v) for v in range(7) if representative >> v & 1)
        code, data = run_json(capsys, "refute", "path:7", "5", start)
        assert code == 1
        assert data["trajectory"] is None

    def test_non_dominating_start(self, capsys):
        assert run(capsys, "refute", "path:4", "2", "a_1,a_2")[0] == 2

    def test_zero_guards(self, capsys):
        assert run(capsys, "refute", "path:4", "0", "a_1")[0] == 2


class TestRealize:
    def test_realize_2_3_5(self, capsys):
        code, data = run_json(capsys, "realize", "2", "3", "5")
        assert code == 0
        assert data["spec"] == "D:1,3"
        assert data["check"]["passed"]

    def test_impossible_triple(self, capsys):
        code, _, err = run(capsys, "realize", "2", "1", "3")
        assert code == 2
        assert "a <= b <= c" in err


class TestSimulate:
    def test_scripted_failure(self, capsys, tmp_path):
        script = tmp_path / "attacks.txt"
        script.write_text("b_5\n")
        code, data = run_json(capsys, "simulate", "house9", "b_1,b_3,b_4", "--adversary", f"scripted:{script}")
        assert code == 0
        assert data["verdict"] == "FAILED"
        assert data["failed_round"] == 1

    def test_export_jsonl(self, capsys, tmp_path):
        target = tmp_path / "run.jsonl"
        code, data = run_json(
            capsys, "simulate", "house9", "b_1,a_3,a_4", "--seed", "5", "--rounds", "20", "--export", str(target)
        )
        assert code == 0
        lines = target.read_text().splitlines()
        assert len(lines) == data["rounds"]
        assert json.loads(lines[0])["configuration"] == data["start"]

    def test_monte_carlo(self, capsys):
        code, data = run_json(
            capsys, "simulate", "house9", "b_1,a_3,a_4", "--adversary", "oracle", "--trials", "10",
            "--rounds", "200", "--threads", "1",
        )
        assert code == 0
        assert data["trials"] == 10
        assert data["failures"] > 0

    def test_exhaustive(self, capsys):
        code, data = run_json(capsys, "simulate", "house9", "b_1,a_3,a_4", "--exhaustive")
        assert code == 0
        assert data["trajectory"]["failed"]

    def test_exhaustive_sound_start(self, capsys):
        code, out, _ = run(capsys, "simulate", "path:4", "a_2,a_4", "--exhaustive")
        assert code == 0
        assert "no attack sequence defeats" in out

    def test_unknown_adversary_choice(self, capsys):
        assert run(capsys, "simulate", "path:4", "a_2,a_4", "--adversary", "sly")[0] == 2


class TestOther:
    def test_verify_paper_small_paths(self, capsys):
        code, data = run_json(capsys, "verify-paper", "--scope", "paths:6", "--threads", "1")
        assert code == 0
        assert data["passed"] == 5
        assert data["failed"] == 0

    def test_verify_paper_bad_scope(self, capsys):
        assert run(capsys, "verify-paper", "--scope", "trees")[0] == 2

    def test_export_dot(self, capsys):
        code, out, _ = run(capsys, "export-dot", "path:4", "--highlight", "a_2")
        assert code == 0
        assert out.startswith('graph "path:4" {')
        assert "fillcolor=lightblue" in out

    def test_schema(self, capsys):
        code, data = run_json(capsys, "schema")
        assert code == 0
        assert "graph_hash" in data["properties"]
        assert "graph_hash" in data["required"]

    def test_invalid_config(self, capsys, tmp_path):
        config = tmp_path / "bad.yaml"
        config.write_text("engine:\n  node_cap: -1\n")
        code, _, err = run(capsys, "compute", "path:3", "gamma", "--config", str(config))
        assert code == 2
        assert "node_cap" in err

    def test_version(self, capsys):
        assert main(["--version"]) == 0
        assert "domlab" in capsys.readouterr().out

    def test_missing_command(self, capsys):
        assert main([]) == 2
