import json
from dataclasses import replace

import pytest

import pathagg.config.settings as settings
from pathagg.cli.app import (
    EXIT_INVALID_INPUT,
    EXIT_IO_ERROR,
    EXIT_OK,
    EXIT_RESOURCE_LIMIT,
    EXIT_VERIFY_FAILED,
    launch_app,
    parse_seed_range,
)
from pathagg.core.generators import gen_crossing_pair
from pathagg.core.instance import Instance, parse_instance, serialize_instance
from pathagg.core.runner import CSV_COLUMNS
from pathagg.core.trace_io import dump_solution, load_solution


@pytest.fixture
def crossing_file(tmp_path):
    path = tmp_path / "crossing.json"
    assert launch_app(["generate", "--family", "crossing", "--out", str(path)]) == EXIT_OK
    return path


@pytest.fixture
def solved(tmp_path, crossing_file):
    solution = tmp_path / "run" / "crossing.solution.json"
    trace = tmp_path / "run" / "crossing.trace.jsonl"
    code = launch_app(["solve", str(crossing_file), "--out", str(solution), "--trace", str(trace)])
    assert code == EXIT_OK
    return solution, trace


def test_generate_writes_the_instance(crossing_file):
    assert serialize_instance(parse_instance(crossing_file.read_bytes())) == serialize_instance(gen_crossing_pair())


def test_generate_rejects_bad_parameters(tmp_path):
    args = ["generate", "--family", "planted-dag", "--n", "5", "--k", "5", "--out", str(tmp_path / "x.json")]
    assert launch_app(args) == EXIT_INVALID_INPUT


def test_solve_and_verify(tmp_path, crossing_file, solved):
    solution, trace = solved
    assert load_solution(solution.read_bytes()).max_switching == 1

    report = tmp_path / "report.json"
    code = launch_app(["verify", str(crossing_file), str(solution), "--trace", str(trace), "--report", str(report)])
    assert code == EXIT_OK

    verdict = json.loads(report.read_text(encoding="utf-8"))
    assert verdict["ok"] is True
    assert verdict["costs_match"] is True
    assert verdict["invariants"]["failure"] is None


def test_solve_writes_graphviz(tmp_path, crossing_file):
    dot = tmp_path / "crossing.dot"
    args = ["solve", str(crossing_file), "--out", str(tmp_path / "s.json"), "--dot", str(dot)]
    assert launch_app(args) == EXIT_OK
    assert dot.read_text(encoding="utf-8").startswith("digraph {")


def test_corrupted_trace_fails_verification(tmp_path, crossing_file, solved):
    solution, trace = solved
    text = trace.read_text(encoding="utf-8")
    assert '"arcs_removed":[1]' in text
    trace.write_text(text.replace('"arcs_removed":[1]', '"arcs_removed":[]'), encoding="utf-8")

    report = tmp_path / "report.json"
    code = launch_app(["verify", str(crossing_file), str(solution), "--trace", str(trace), "--report", str(report)])
    assert code == EXIT_VERIFY_FAILED
    failure = json.loads(report.read_text(encoding="utf-8"))["invariants"]["failure"]
    assert failure["condition"] == "c1"


def test_trace_that_is_not_utf8(tmp_path, crossing_file, solved):
    solution, trace = solved
    trace.write_bytes(b"\xff\xfe lixo\n")
    assert launch_app(["verify", str(crossing_file), str(solution), "--trace", str(trace)]) == EXIT_INVALID_INPUT

    solution.write_bytes(b"\xff\xfe")
    assert launch_app(["verify", str(crossing_file), str(solution)]) == EXIT_INVALID_INPUT


def test_cyclic_solution_fails_verification(tmp_path, crossing_file, solved):
    solution, _ = solved
    broken = replace(load_solution(solution.read_bytes()), arcs=(1, 3, 4))
    solution.write_bytes(dump_solution(broken))
    assert launch_app(["verify", str(crossing_file), str(solution)]) == EXIT_VERIFY_FAILED


def test_solution_for_another_instance(tmp_path, solved):
    other = tmp_path / "lb.json"
    assert launch_app(["generate", "--family", "lb-tree", "--depth", "1", "--out", str(other)]) == EXIT_OK
    assert launch_app(["verify", str(other), str(solved[0])]) == EXIT_INVALID_INPUT


def test_oracle_respects_state_limit(tmp_path, crossing_file):
    assert launch_app(["oracle", str(crossing_file), "--max-states", "1"]) == EXIT_RESOURCE_LIMIT
    witness = tmp_path / "opt.json"
    assert launch_app(["oracle", str(crossing_file), "--out", str(witness)]) == EXIT_OK
    assert load_solution(witness.read_bytes()).max_switching == 0


def test_baseline_needs_a_tree(tmp_path, crossing_file):
    assert launch_app(["baseline", str(crossing_file)]) == EXIT_INVALID_INPUT

    tree = tmp_path / "tree.json"
    assert launch_app(["generate", "--family", "rand-tree", "--n", "30", "--seed", "3", "--out", str(tree)]) == EXIT_OK
    assert launch_app(["baseline", str(tree), "--out", str(tmp_path / "b.json")]) == EXIT_OK


def test_invalid_instance_is_reported(tmp_path):
    bad = Instance.from_arcs(3, 0, [(2, 1, "a"), (1, 0, "b")], {2: [0, 1]}, terminals=[2])
    path = tmp_path / "bad.json"
    path.write_bytes(serialize_instance(bad))
    assert launch_app(["solve", str(path), "--out", str(tmp_path / "s.json")]) == EXIT_INVALID_INPUT

    path.write_text('{"vertices": 3', encoding="utf-8")
    assert launch_app(["solve", str(path), "--out", str(tmp_path / "s.json")]) == EXIT_INVALID_INPUT


def test_missing_file(tmp_path):
    assert launch_app(["solve", str(tmp_path / "nada.json")]) == EXIT_IO_ERROR


def test_bench_writes_one_row_per_seed(tmp_path):
    out = tmp_path / "bench.csv"
    args = [
        "bench", "--family", "rand-tree", "--n", "40", "--seeds", "0..2",
        "--jobs", "1", "--check-trace", "--out", str(out),
    ]
    assert launch_app(args) == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].split(",") == list(CSV_COLUMNS)
    assert len(lines) == 4


def test_bench_rejects_bad_parameters(tmp_path):
    out = tmp_path / "bench.csv"
    args = ["bench", "--family", "planted-dag", "--n", "5", "--k", "10", "--seeds", "0..1", "--out", str(out)]
    assert launch_app(args) == EXIT_INVALID_INPUT
    assert not out.exists()


def test_seed_ranges():
    assert parse_seed_range("3..5") == range(3, 6)
    assert parse_seed_range("7") == range(7, 8)
    assert launch_app(["bench", "--family", "crossing", "--seeds", "5..2"]) == EXIT_INVALID_INPUT


def test_config_updates_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(settings, "ENV_FILE", str(tmp_path / ".env"))
    monkeypatch.setattr(settings, "ORACLE_MAX_STATES", 10_000_000)

    assert launch_app(["config", "--set", "PATHAGG_SEED=-1"]) == EXIT_INVALID_INPUT
    assert launch_app(["config", "--set", "COLOR=blue"]) == EXIT_INVALID_INPUT
    assert not (tmp_path / ".env").exists()

    assert launch_app(["config", "--set", "ORACLE_MAX_STATES=1000"]) == EXIT_OK
    assert "ORACLE_MAX_STATES=1000" in capsys.readouterr().out
    assert (tmp_path / ".env").read_text(encoding="utf-8") == "ORACLE_MAX_STATES=1000\n"


def test_trace_files_are_identical_across_runs(tmp_path, crossing_file):
    traces = []
    for name in ("a", "b"):
        trace = tmp_path / f"{name}.jsonl"
        launch_app(["solve", str(crossing_file), "--out", str(tmp_path / f"{name}.json"), "--trace", str(trace)])
        traces.append(trace.read_bytes())
    assert traces[0] == traces[1]


def test_usage_errors():
    assert launch_app(["--version"]) == EXIT_OK
    assert launch_app([]) == EXIT_INVALID_INPUT
    assert launch_app(["solve"]) == EXIT_INVALID_INPUT
