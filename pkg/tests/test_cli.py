"""Command-line surface: golden outputs for the documented invocations,
exit codes, output formats and the environment override."""

from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from mgx import core
from mgx.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_golden_plain_outputs(capsys):
    for argv, want in [
        (("sigma", "--r", "2", "--d", "1", "--a", "2", "--n", "6"), "37"),
        (("xstar", "--r", "2", "--a", "2", "--d", "1"), "0.269577"),
        (("pi", "--r", "1", "--d", "0", "--a", "5", "--n", "4"), "15625"),
        (("exact", "--n", "4", "--s", "4", "--q", "15"), "216"),
        (("girth", "--n", "5", "--s", "4"), "5"),
        (("sparse", "--n", "6", "--s", "4", "--q", "7"), "2"),
    ]:
        code, out = run(capsys, *argv)
        assert code == 0
        assert out.strip() == want


def test_pow_golden_weights(capsys):
    code, out = run(capsys, "pow", "--r", "1,1", "--a", "2,1")
    assert code == 0
    assert out.strip() == "0.730423 0.269577"


def test_iterated_golden(capsys):
    code, out = run(capsys, "iterated", "--r", "1,1", "--a", "2,1", "--n", "6")
    assert code == 0
    assert out.strip() == "sigma=37 pi=419904"


def test_json_output_parses_with_sorted_keys(capsys):
    code, out = run(capsys, "sigma", "--r", "2", "--d", "1", "--a", "2",
                    "--n", "6", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj == {"r": 2, "d": 1, "a": 2, "n": 6, "sigma": 37}
    assert list(obj) == sorted(obj)


def test_csv_output_keeps_full_decimal(capsys):
    code, out = run(capsys, "pi", "--r", "1", "--d", "0", "--a", "9",
                    "--n", "20", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 2
    value = dict(zip(rows[0], rows[1]))["pi"]
    assert value == str(9 ** 190)
    assert "e" not in value


def test_exact_json_and_witness_file(capsys, tmp_path):
    path = tmp_path / "w.json"
    code, out = run(capsys, "exact", "--n", "5", "--s", "4", "--q", "15",
                    "--emit-witness", str(path), "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["optimum"] == 7776
    assert obj["complete"] is True
    g = core.load(str(path))
    assert core.edge_product(g) == 7776
    assert core.is_sq_graph(g, 4, 15)


def test_exit_code_2_on_invalid_parameters(capsys):
    assert run(capsys, "sigma", "--r", "0", "--d", "0", "--a", "2",
               "--n", "4")[0] == 2
    assert run(capsys, "sparse", "--n", "3", "--s", "4", "--q", "7")[0] == 2
    assert run(capsys, "construct", "--r", "2", "--d", "1", "--a", "2")[0] == 2
    assert run(capsys, "pow", "--r", "1,x", "--a", "2,1")[0] == 2


def test_exit_code_3_on_incomplete_search(capsys):
    code, out = run(capsys, "exact", "--n", "6", "--s", "4", "--q", "21",
                    "--nodes", "2", "--format", "json")
    assert code == 3
    assert json.loads(out)["complete"] is False


def test_env_var_overrides_threads(capsys, monkeypatch):
    monkeypatch.setenv("MGX_THREADS", "1")
    code, out = run(capsys, "exact", "--n", "4", "--s", "4", "--q", "15",
                    "--threads", "7")
    assert code == 0
    assert out.strip() == "216"
    monkeypatch.setenv("MGX_THREADS", "soon")
    assert run(capsys, "exact", "--n", "4", "--s", "4", "--q", "15")[0] == 2


def test_construct_roundtrip_and_metrics(capsys, tmp_path):
    path = tmp_path / "g.json"
    code, out = run(capsys, "construct", "--r", "2", "--d", "1", "--a", "2",
                    "--sizes", "2,3", "--out", str(path), "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["partition"] == [2, 3]
    assert obj["edge_product"] == 5832
    g = core.load(str(path))
    assert core.edge_product(g) == 5832
    # plain form prints the canonical graph JSON itself
    code, out = run(capsys, "construct", "--r", "2", "--d", "1", "--a", "2",
                    "--sizes", "2,3")
    assert out.strip() == core.dumps(g)


def test_reduce_all_light_and_witness(capsys, tmp_path):
    path = tmp_path / "g.json"
    g = core.Multigraph(8, fill=2)
    core.save(str(path), g)
    code, out = run(capsys, "reduce", "--lemma", "triangle", "--in",
                    str(path), "--a", "2", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"status": "all-light"}
    for u, v in ((0, 1), (0, 2), (1, 2)):
        g.set(u, v, 3)
    core.save(str(path), g)
    code, out = run(capsys, "reduce", "--lemma", "triangle", "--in",
                    str(path), "--a", "2", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["status"] == "witness"
    assert obj["vertex"] in (0, 1, 2)
    assert obj["reducer"] == "heavy-triangle"
    assert obj["bound"] > 0


def test_reduce_step_down_requires_parameters(capsys, tmp_path):
    path = tmp_path / "g.json"
    core.save(str(path), core.Multigraph(7, fill=2))
    code, _ = run(capsys, "reduce", "--lemma", "step-down", "--in", str(path),
                  "--a", "2")
    assert code == 2
    code, out = run(capsys, "reduce", "--lemma", "step-down", "--in",
                    str(path), "--a", "2", "--r", "3", "--d", "1", "--s", "2",
                    "--format", "json")
    assert code == 0
    assert json.loads(out)["status"] == "in-lower-class"


def test_peel_streams_json_lines(capsys, tmp_path):
    path = tmp_path / "g.json"
    g = core.Multigraph(8, fill=2)
    g.set(3, 4, 4)
    core.save(str(path), g)
    out_path = tmp_path / "t.json"
    code, out = run(capsys, "peel", "--in", str(path), "--a", "2",
                    "--out", str(out_path), "--format", "json")
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert len(lines) == 2  # one removal, then the summary
    assert lines[0]["reducer"] == "heavy-edge"
    assert lines[1]["reason"] == "acyclic"
    assert lines[1]["transformed"] is True
    transformed = core.load(str(out_path))
    assert transformed.n == 7


def test_sparse_bounds_and_witness_path(capsys, tmp_path):
    path = tmp_path / "w.json"
    code, out = run(capsys, "sparse", "--n", "7", "--s", "4", "--q", "11",
                    "--witness", str(path), "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["regime"] == "QUADRATIC_THETA"
    assert obj["bounds"]["lower"] <= obj["bounds"]["upper"]
    assert obj["witness_path"] == str(path)
    g = core.load(str(path))
    assert core.is_sq_graph(g, 4, 11)


def test_dominance_output(capsys):
    code, out = run(capsys, "dominance", "--r", "1,1", "--a", "2,1",
                    "--s", "4", "--universe", "2,3,2")
    assert code == 0
    assert out.strip() == "dominant"
    code, out = run(capsys, "dominance", "--r", "1,2", "--a", "3,2",
                    "--s", "5", "--universe", "2,3,3")
    assert code == 0
    assert out.strip() == "beaten by r=2 a=3"


def test_conjecture_statuses_and_exit(capsys):
    code, out = run(capsys, "conjecture", "--r", "2", "--d", "1", "--a", "2",
                    "--s", "4", "--n", "4")
    assert code == 0
    assert out.strip() == "EQUAL"
    code, out = run(capsys, "conjecture", "--r", "2", "--d", "1", "--a", "2",
                    "--s", "3", "--n", "5")
    assert code == 2


def test_verify_cli_plain_and_json(capsys):
    code, out = run(capsys, "verify", "--suite", "entropy")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "suite entropy: PASS"
    assert all(line.startswith("PASS") for line in lines[:-1])
    code, out = run(capsys, "verify", "--suite", "entropy", "--format",
                    "json")
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert {c["id"] for c in report["checks"]} == {"4", "5"}


def test_verify_json_schema_stable_across_threads(capsys):
    def normalized(threads):
        code, out = run(capsys, "verify", "--suite", "base-cases",
                        "--time-s", "60", "--threads", str(threads),
                        "--format", "json")
        assert code == 0
        report = json.loads(out)
        for check in report["checks"]:
            check.pop("seconds")
        return report

    assert normalized(1) == normalized(4)


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mgx.cli", "exact", "--n",
                           "4", "--s", "4", "--q", "15"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "216"
    proc = subprocess.run(["mgx", "girth", "--n", "6", "--s", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "6"
