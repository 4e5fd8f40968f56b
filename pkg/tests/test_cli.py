import json
import subprocess
import sys

import jsonschema
import pytest

from steinergp import families as fam
from steinergp.cli import CACHE_ENV, ResultCache, load_schema, main
from steinergp.edgelist import dumps, read, write


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv(CACHE_ENV, str(d))
    return d


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    record = json.loads(out)
    jsonschema.validate(record, load_schema())
    return code, record


def test_compute_cycle(capsys):
    code, record = run_json(capsys, "compute", "--family", "cycle:10", "--what", "sgp", "--k", "4")
    assert code == 0
    assert record["value"] == 5 and record["kind"] == "Exact"
    assert record["graph"]["n"] == 10 and record["params"] == {"k": 4}


def test_compute_complete_gp(capsys):
    code, record = run_json(capsys, "compute", "--family", "complete:5", "--what", "gp")
    assert (code, record["value"]) == (0, 5)


def test_compute_steiner_from_file(capsys, tmp_path):
    path = tmp_path / "c6.edges"
    write(fam.cycle(6), path)
    code, record = run_json(capsys, "compute", str(path), "--what", "steiner", "--terminals", "0,2,4")
    assert (code, record["value"]) == (0, 4)


def test_compute_steiner_infinite(capsys, tmp_path):
    path = tmp_path / "two.edges"
    path.write_text("4 2\n0 1\n2 3\n")
    code, record = run_json(capsys, "compute", str(path), "--what", "steiner", "--terminals", "0,3")
    assert (code, record["value"]) == (0, "inf")


def test_human_and_json_agree(capsys):
    code, out, _ = run(capsys, "compute", "--family", "wheel:7", "--what", "sjc", "--k", "2", "--no-cache")
    _, record = run_json(capsys, "compute", "--family", "wheel:7", "--what", "sjc", "--k", "2", "--no-cache")
    assert f"value: {record['value']} ({record['kind']})" in out
    assert "witness: " + " ".join(map(str, record["witness"])) in out


def test_labels_from_sidecar(capsys, tmp_path):
    path = tmp_path / "g3.edges"
    assert run(capsys, "generate", "--counterexample", "3", "--out", str(path))[0] == 0
    code, record = run_json(capsys, "compute", str(path), "--what", "sgp", "--k", "3")
    assert code == 0
    assert record["witness_labels"] == [read(path).labels[v] for v in record["witness"]]
    code, record = run_json(capsys, "compute", str(path), "--what", "steiner", "--terminals", "v1,v2,v3")
    assert record["value"] == 6


def test_cache_hit_on_second_call(capsys, cache_dir):
    argv = ("compute", "--family", "cycle:7", "--what", "somega", "--k", "3")
    _, first = run_json(capsys, *argv)
    _, second = run_json(capsys, *argv)
    assert first["cache_hit"] is False and second["cache_hit"] is True
    assert second["value"] == first["value"] and second["witness"] == first["witness"]
    # different parameters miss
    _, third = run_json(capsys, "compute", "--family", "cycle:7", "--what", "somega", "--k", "4")
    assert third["cache_hit"] is False
    assert len((cache_dir / "results.jsonl").read_text().splitlines()) == 2


def test_corrupt_cache_line_is_skipped(capsys, cache_dir):
    argv = ("compute", "--family", "path:5", "--what", "sgp", "--k", "2")
    run_json(capsys, *argv)
    log = cache_dir / "results.jsonl"
    log.write_text("{garbage\n" + log.read_text())
    with pytest.warns(UserWarning, match="corrupt cache line"):
        _, record = run_json(capsys, *argv)
    assert record["cache_hit"] is True


def test_cache_key_is_exact():
    cache = ResultCache()
    record = {"graph": {"hash": "h"}, "operation": "sgp", "params": {"k": 2}}
    cache.append(record)
    assert cache.lookup("h", "sgp", {"k": 2}) == record
    assert cache.lookup("h", "sgp", {"k": 3}) is None
    assert cache.lookup("h", "sjc", {"k": 2}) is None


def test_truncation_exit_code(capsys):
    code, record = run_json(
        capsys, "compute", "--family", "grid:3", "--what", "sgp", "--k", "3", "--budget-nodes", "30"
    )
    assert code == 2
    assert record["kind"] == "LowerBound" and record["stats"]["truncated"]


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "--family", "cycle:5", "--what", "sgp"],
        ["compute", "--family", "cycle:5", "--what", "sgp", "--k", "9"],
        ["compute", "--family", "cycle:5", "--what", "sgp", "--k", "2", "--terminals", "0"],
        ["compute", "--family", "cycle:5", "--what", "gp", "--k", "2"],
        ["compute", "--family", "cycle:5", "--what", "sgp-interval", "--k", "2"],
        ["compute", "--family", "nope:5", "--what", "gp"],
        ["compute", "--what", "gp"],
        ["compute", "/nonexistent/file.edges", "--what", "gp"],
        ["verify", "--suite", "nope"],
        ["generate"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_one(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_malformed_file_reports_line(capsys, tmp_path):
    path = tmp_path / "bad.edges"
    path.write_text("3 2\n0 1\n1 x\n")
    code, _, err = run(capsys, "compute", str(path), "--what", "gp")
    assert code == 1 and "line 3" in err


def test_generate(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "--family", "wheel:7")
    assert code == 0 and out.splitlines()[0] == "7 12"
    path = tmp_path / "grid.edges"
    run(capsys, "generate", "--grid", "2", "--out", str(path))
    assert path.read_text().splitlines()[0] == "25 40"
    side = json.loads((tmp_path / "grid.edges.json").read_text())
    assert len(side["coordinates"]) == 25
    path = tmp_path / "g3.edges"
    run(capsys, "generate", "--counterexample", "3", "--out", str(path))
    g = read(path)
    assert g.n == 13
    assert path.read_text() == dumps(g)


def test_verify(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--suite", "figure1", "--report", str(report))
    assert code == 0 and "0 mismatch" in out
    assert json.loads(report.read_text())["passed"] is True
    code, out, _ = run(capsys, "verify", "--suite", "grid", "--k", "4", "--json")
    data = json.loads(out)
    assert code == 0 and data["summary"]["match"] == 2
    code, _, _ = run(capsys, "verify", "--suite", "cycles", "--max-n", "8")
    assert code == 0


def test_verify_exit_one_on_mismatch(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "corollary44", "--max-n", "6")
    assert code == 1


def test_console_script(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "steinergp", "compute", "--family", "cycle:10", "--what", "sgp", "--k", "4", "--no-cache"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert "value: 5 (Exact)" in out.stdout
