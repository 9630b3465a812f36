from __future__ import annotations

import json

import pytest

from cli import EXIT_GUARD, EXIT_INPUT, EXIT_INVALID, EXIT_OK, EXIT_UNSUPPORTED, main
from conftest import LOWER_BOUND_GAP, SIMPLE_PART_GAP, WEIGHTED_OVERLAP, instance_text


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


class TestSolve:
    def test_simple_part_gap(self, capsys, write):
        path = write("gap.txt", instance_text(SIMPLE_PART_GAP))
        code, payload = run_json(capsys, "solve", "--input_file", path, "--capacity", "3")
        assert code == EXIT_OK
        assert payload["lambda"] == 2
        assert payload["block_ids"] == [["a", "b"], ["c", "d", "e"], ["f", "g"]]
        assert payload["valid"] is True

    def test_lower_bound_gap_text_output(self, capsys, write):
        path = write("lb.txt", instance_text(LOWER_BOUND_GAP))
        assert main(["solve", "--input_file", path, "--capacity", "2"]) == EXIT_OK
        assert "λ = 2" in capsys.readouterr().out

    def test_batch_directory(self, capsys, tmp_path):
        batch = tmp_path / "batch"
        batch.mkdir()
        (batch / "one.txt").write_text(instance_text(SIMPLE_PART_GAP), encoding="utf-8")
        (batch / "two.txt").write_text(instance_text(LOWER_BOUND_GAP), encoding="utf-8")
        code, payload = run_json(capsys, "solve", "--input_dir", str(batch), "--capacity", "3", "--workers", "2")
        assert code == EXIT_OK
        assert [p["lambda"] for p in payload] == [2, 1]

    def test_parse_error(self, capsys, write):
        path = write("bad.txt", "a 1\n")
        code, payload = run_json(capsys, "solve", "--input_file", path, "--capacity", "3")
        assert code == EXIT_INPUT
        assert "строка 1" in payload["error"]

    def test_not_proper(self, capsys, write):
        path = write("nested.txt", "a 1 10\nb 2 5\n")
        code, _ = run_json(capsys, "solve", "--input_file", path, "--capacity", "2")
        assert code == EXIT_UNSUPPORTED

    def test_missing_capacity(self, capsys, write):
        path = write("gap.txt", instance_text(SIMPLE_PART_GAP))
        assert main(["solve", "--input_file", path]) == EXIT_INPUT
        captured = capsys.readouterr()
        assert "ёмкость" in captured.out
        assert "кодом 1" in captured.err

    def test_split_graph_bound(self, capsys, write):
        path = write("g.split", "q 1 2 3\ns 4 5\nadj 4 1 2\nadj 5 2 3\n")
        code, payload = run_json(capsys, "solve", "--split_graph", "--input_file", path, "--capacity", "2")
        assert code == EXIT_OK
        assert payload["lower_bound"] == 2
        assert payload["lambda"] <= 3


class TestWeighted:
    def test_split(self, capsys, write):
        path = write("w.txt", instance_text(WEIGHTED_OVERLAP))
        code, payload = run_json(capsys, "solve-split", "--input_file", path, "--capacity", "3")
        assert code == EXIT_OK
        assert payload["lambda"] == 2
        assert payload["assignment"]["v2"] == [[1, 1], [2, 1]]

    def test_nonsplit(self, capsys, write):
        path = write("w.txt", instance_text(WEIGHTED_OVERLAP))
        code, payload = run_json(capsys, "solve-weighted", "--input_file", path, "--capacity", "3")
        assert code == EXIT_OK
        assert payload["lambda"] == 3
        assert payload["split_lambda"] == 2
        assert payload["ratio"] <= 2

    def test_weight_above_capacity(self, capsys, write):
        path = write("w.txt", instance_text(WEIGHTED_OVERLAP))
        code, _ = run_json(capsys, "solve-split", "--input_file", path, "--capacity", "1")
        assert code == EXIT_UNSUPPORTED


class TestOracle:
    def test_single_file(self, capsys, write):
        path = write("gap.txt", instance_text(SIMPLE_PART_GAP))
        code, payload = run_json(capsys, "oracle", "--input_file", path, "--capacity", "3")
        assert code == EXIT_OK
        assert payload["block_oracle"] == payload["solver_lambda"] == payload["general_oracle"] == 2
        assert payload["min_colors"] == 2
        assert payload["agree"] is True

    def test_weighted_file(self, capsys, write):
        path = write("w.txt", instance_text(WEIGHTED_OVERLAP))
        code, payload = run_json(capsys, "oracle", "--input_file", path, "--capacity", "4")
        assert code == EXIT_OK
        assert payload["split_lambda"] == payload["split_oracle"] == 2

    def test_guard_exceeded(self, capsys, write):
        path = write("gap.txt", instance_text(SIMPLE_PART_GAP))
        code, _ = run_json(capsys, "oracle", "--input_file", path, "--capacity", "3", "--guard", "3")
        assert code == EXIT_GUARD

    def test_guard_above_limit(self, capsys, write):
        path = write("gap.txt", instance_text(SIMPLE_PART_GAP))
        assert main(["oracle", "--input_file", path, "--capacity", "3", "--guard", "40"]) == EXIT_INPUT

    def test_exhaustive(self, capsys):
        code, payload = run_json(capsys, "oracle", "--exhaustive", "--max_n", "5", "--capacities", "2", "3",
                                 "--workers", "1")
        assert code == EXIT_OK
        assert payload["instances"] == 1 + 1 + 2 + 5 + 14
        assert payload["mismatches"] == []

    def test_exhaustive_weighted(self, capsys):
        code, payload = run_json(capsys, "oracle", "--exhaustive", "--weighted", "--max_n", "3", "--max_weight", "2",
                                 "--capacities", "2", "3", "--nonsplit_limit", "3", "--workers", "1")
        assert code == EXIT_OK
        assert payload["instances"] == 2 + 4 + 2 * 8
        assert payload["nonsplit_limit"] == 3
        assert payload["mismatches"] == []

    def test_nonsplit_limit_above_guard(self, capsys):
        assert main(["oracle", "--exhaustive", "--weighted", "--max_n", "2", "--nonsplit_limit", "12"]) == EXIT_INPUT


class TestVerify:
    def test_solver_claim_passes(self, capsys, write):
        path = write("gap.txt", instance_text(SIMPLE_PART_GAP))
        code, payload = run_json(capsys, "solve", "--input_file", path, "--capacity", "3")
        claim = write("claim.json", json.dumps(payload))
        code, report = run_json(capsys, "verify", "--input_file", path, "--capacity", "3", "--claim", claim)
        assert code == EXIT_OK
        assert report["ok"] is True

    def test_tampered_claim_fails(self, capsys, write):
        path = write("gap.txt", instance_text(SIMPLE_PART_GAP))
        claim = write("claim.json", json.dumps({"lambda": 2, "block_ids": [["a", "b", "c"], ["d", "e", "f"], ["g"]]}))
        code, report = run_json(capsys, "verify", "--input_file", path, "--capacity", "3", "--claim", claim)
        assert code == EXIT_INVALID
        assert {v["kind"] for v in report["violations"]} == {"clique-intersection"}

    def test_coloring_claim(self, capsys, write):
        path = write("lb.txt", instance_text(LOWER_BOUND_GAP))
        claim = write("claim.json", json.dumps({"lambda": 1, "assignment": {"a": 1, "b": 1, "c": 1}}))
        code, report = run_json(capsys, "verify", "--input_file", path, "--capacity", "2", "--claim", claim)
        assert code == EXIT_INVALID
        assert "size" in {v["kind"] for v in report["violations"]}

    def test_split_claim(self, capsys, write):
        path = write("w.txt", instance_text(WEIGHTED_OVERLAP))
        code, payload = run_json(capsys, "solve-split", "--input_file", path, "--capacity", "3")
        claim = write("claim.json", json.dumps(payload))
        code, report = run_json(capsys, "verify", "--input_file", path, "--capacity", "3", "--claim", claim,
                                "--mode", "splittable")
        assert code == EXIT_OK

    def test_claim_is_not_json(self, capsys, write):
        path = write("gap.txt", instance_text(SIMPLE_PART_GAP))
        claim = write("claim.json", "{oops")
        assert main(["verify", "--input_file", path, "--capacity", "3", "--claim", claim]) == EXIT_INPUT


class TestLp:
    def test_emit(self, capsys, write):
        path = write("lb.txt", instance_text(LOWER_BOUND_GAP))
        assert main(["lp-emit", "--input_file", path, "--capacity", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "Subject To" in out and " size_2: x2 + x3 >= 1" in out

    def test_round(self, capsys, write):
        path = write("tri.txt", "a 1 10\nb 2 11\nc 3 12\n")
        solution = write("sol.txt", "1 1/2\n2 1/2\n3 1\nlambda 5/2\n")
        code, payload = run_json(capsys, "lp-round", "--input_file", path, "--capacity", "2", "--solution", solution)
        assert code == EXIT_OK
        assert payload["x"] == [1, 0, 1]
        assert payload["lambda"] == 2

    def test_round_infeasible(self, capsys, write):
        path = write("tri.txt", "a 1 10\nb 2 11\nc 3 12\n")
        solution = write("sol.txt", "3 1\nlambda 1\n")
        code, _ = run_json(capsys, "lp-round", "--input_file", path, "--capacity", "2", "--solution", solution)
        assert code == EXIT_UNSUPPORTED


class TestReduce:
    def test_contradiction(self, capsys, write):
        path = write("f.cnf", "p cnf 1 2\n1 0\n-1 0\n")
        code, payload = run_json(capsys, "reduce", "--input_file", path)
        assert code == EXIT_OK
        assert (payload["sat"], payload["sp"], payload["cp"]) == (False, False, False)
        assert payload["cp_instance"]["target"] == 2

    def test_empty_clause(self, capsys, write):
        path = write("f.cnf", "p cnf 1 1\n0\n")
        code, _ = run_json(capsys, "reduce", "--input_file", path)
        assert code == EXIT_UNSUPPORTED

    def test_set_pairing_input(self, capsys, write):
        path = write("s.sp", "e a b c d\ns a b\ns c d\n")
        code, payload = run_json(capsys, "reduce", "--kind", "sp", "--input_file", path)
        assert code == EXIT_OK
        assert payload["sp"] is True and payload["cp"] is True

    def test_exhaustive(self, capsys):
        code, payload = run_json(capsys, "reduce", "--exhaustive", "--max_p", "1", "--max_q", "2", "--workers", "1")
        assert code == EXIT_OK
        assert payload["formulas"] == 4
        assert payload["inconsistent"] == []


class TestSchedule:
    def test_requests(self, capsys, write):
        path = write("req.txt", "r1 0 2 2\nr2 1 3 2\nr3 1 3 1\n")
        code, payload = run_json(capsys, "schedule", "--input_file", path, "--capacity", "3", "--mode", "splittable")
        assert code == EXIT_OK
        assert payload["congestion"] == 5
        assert payload["lambda"] == 2
        assert payload["valid"] is True


class TestBench:
    def test_adversarial_block_count(self, capsys):
        code, payload = run_json(capsys, "bench", "--family", "adversarial", "--t", "10", "--repeats", "1")
        assert code == EXIT_OK
        assert payload["rows"][0]["fb_count"] == 111
        assert payload["fb_count_ok"] is True


class TestConfig:
    def test_values_from_yaml(self, capsys, write):
        path = write("gap.txt", instance_text(SIMPLE_PART_GAP))
        config = write("config.yaml", "capacity: 3\nformat: json\n")
        assert main(["solve", "--input_file", path, "--config", config]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["lambda"] == 2

    def test_default_config_in_working_directory(self, capsys, write):
        path = write("gap.txt", instance_text(SIMPLE_PART_GAP))
        write("config.yaml", "capacity: 3\n")
        assert main(["solve", "--input_file", path]) == EXIT_OK

    @pytest.mark.parametrize("text", ["capacity: [1\n", "capacity: 0\n", "format: xml\n", "guards:\n  cp_oracle: 99\n"])
    def test_rejects_bad_config(self, capsys, write, text):
        path = write("gap.txt", instance_text(SIMPLE_PART_GAP))
        config = write("bad.yaml", text)
        assert main(["solve", "--input_file", path, "--config", config]) == EXIT_INPUT
