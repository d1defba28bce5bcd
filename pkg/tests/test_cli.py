import csv
import json
import subprocess
import sys

import pytest

from conftest import match_doc
from leadnet.cli import main


@pytest.fixture(scope="module")
def sim_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("sim")
    assert main(["simulate", "--out", str(out), "--n-matches", "300", "--odi-fraction", "0.6", "--seed", "2", "--beta-c", "0.262", "--a1", "1.0"]) == 0
    return out


def test_simulate_outputs(sim_dir):
    assert {p.name for p in sim_dir.iterdir()} == {"corpus.jsonl", "stats.csv", "sim_config.json"}
    cfg = json.loads((sim_dir / "sim_config.json").read_text())
    assert cfg["n_matches"] == 300 and cfg["seed"] == 2


def test_simulate_config_file(tmp_path):
    (tmp_path / "c.json").write_text(json.dumps({"n_matches": 5, "teams": ["X", "Y", "Z"], "seed": 1}))
    assert main(["simulate", "--out", str(tmp_path / "o"), "--config", str(tmp_path / "c.json")]) == 0
    assert len((tmp_path / "o" / "corpus.jsonl").read_text().splitlines()) == 5


def test_simulate_bad_config(tmp_path, capsys):
    (tmp_path / "c.json").write_text(json.dumps({"n_matches": 5, "no_such_field": 1}))
    assert main(["simulate", "--out", str(tmp_path / "o"), "--config", str(tmp_path / "c.json")]) == 3
    assert main(["simulate", "--out", str(tmp_path / "o"), "--n-matches", "0"]) == 3


def test_ingest_summary(sim_dir, capsys):
    assert main(["ingest", str(sim_dir / "corpus.jsonl"), "--stats", str(sim_dir / "stats.csv")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["matches"] == 300
    assert out["by_format"]["ODI"] + out["by_format"]["TEST"] == 300
    assert out["captains_missing_stats"] == 0


def test_ingest_invalid_corpus(tmp_path, capsys):
    path = tmp_path / "bad.jsonl"
    path.write_text(json.dumps(match_doc(outcome="DRAW")) + "\n")
    assert main(["ingest", str(path)]) == 1
    assert "InvariantError" in capsys.readouterr().err


def test_missing_file():
    assert main(["ingest", "/nonexistent/corpus.jsonl"]) == 1


def test_usage_errors():
    with pytest.raises(SystemExit) as info:
        main(["replicate"])
    assert info.value.code == 3
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 3
    with pytest.raises(SystemExit) as info:
        main(["replicate", "c", "--stats", "s", "--out", "o", "--format", "t20"])
    assert info.value.code == 3


def test_bootstrap_too_small(sim_dir, tmp_path):
    args = ["replicate", str(sim_dir / "corpus.jsonl"), "--stats", str(sim_dir / "stats.csv"), "--out", str(tmp_path / "r"), "--bootstrap", "10"]
    assert main(args) == 3
    assert not (tmp_path / "r").exists()


def test_network_export(sim_dir, capsys):
    corpus = (sim_dir / "corpus.jsonl").read_text().splitlines()
    mid = json.loads(corpus[0])["match_id"]
    assert main(["network", str(sim_dir / "corpus.jsonl"), mid, "--export", "dot"]) == 0
    assert capsys.readouterr().out.startswith("graph")
    assert main(["network", str(sim_dir / "corpus.jsonl"), mid, "--side", "2", "--export", "json"]) == 0
    assert "betweenness" in json.loads(capsys.readouterr().out)["nodes"][0]
    assert main(["network", str(sim_dir / "corpus.jsonl"), mid, "--export", "png"]) == 1
    assert main(["network", str(sim_dir / "corpus.jsonl"), "nope"]) == 3


def test_analyze(sim_dir, capsys):
    mid = json.loads((sim_dir / "corpus.jsonl").read_text().splitlines()[0])["match_id"]
    assert main(["analyze", str(sim_dir / "corpus.jsonl"), mid, "--stats", str(sim_dir / "stats.csv")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["match_id"] == mid and len(out["teams"]) == 2


def test_replicate_writes_layout(sim_dir, tmp_path):
    out = tmp_path / "rep"
    args = ["replicate", str(sim_dir / "corpus.jsonl"), "--stats", str(sim_dir / "stats.csv"), "--seed", "7", "--out", str(out), "--bootstrap", "1000"]
    assert main(args) == 0
    names = {p.name for p in out.iterdir()}
    assert names == {
        "report.json", "table1_logit.csv", "table2_linear.csv", "fig2_scores.csv", "fig3_std_coef.csv",
        "bci.csv", "vif.csv", "drop_ledger.csv", "observations.csv", "differentials.csv",
    }
    report = json.loads((out / "report.json").read_text())
    for name in names - {"report.json"}:
        with open(out / name) as fh:
            rows = list(csv.DictReader(fh))
        assert rows, name
        assert {r["config_hash"] for r in rows} == {report["config_hash"]}, name


def test_empty_corpus_no_report(tmp_path, sim_dir):
    (tmp_path / "empty.jsonl").write_text("")
    out = tmp_path / "rep"
    args = ["replicate", str(tmp_path / "empty.jsonl"), "--stats", str(sim_dir / "stats.csv"), "--out", str(out)]
    assert main(args) == 1
    assert not out.exists()


def test_fit_error_exit_code(tmp_path, sim_dir):
    # a single match cannot support the logit
    (tmp_path / "one.jsonl").write_text(json.dumps(match_doc()) + "\n")
    args = ["replicate", str(tmp_path / "one.jsonl"), "--stats", str(sim_dir / "stats.csv"), "--format", "odi", "--out", str(tmp_path / "r")]
    assert main(args) == 2


def test_module_entry_point(sim_dir):
    res = subprocess.run([sys.executable, "-m", "leadnet", "ingest", str(sim_dir / "corpus.jsonl")], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["matches"] == 300
