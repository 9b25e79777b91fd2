import json
from pathlib import Path

import qoecell.cli as cli

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def test_lambda_gen(capsys):
    assert cli.main(["lambda-gen", "--users", "5", "--levels", "4"]) == 0
    assert capsys.readouterr().out.strip() == "13310,1210,110,10,1"


def test_allocate_prints_table(capsys):
    assert cli.main(["allocate", "--config", str(CONFIGS / "fixed_distances.json")]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("user,")
    assert len(out) == 7 and out[-1].startswith("objective,")


def test_verify_small(capsys):
    assert cli.main(["verify", "--instances", "10"]) == 0
    assert "10/10" in capsys.readouterr().out


def test_verify_reports_mismatch(monkeypatch, capsys):
    monkeypatch.setattr(cli, "objective_value", lambda ind, w: -1)
    assert cli.main(["verify", "--instances", "2"]) == 2
    assert "0/2" in capsys.readouterr().out


def test_simulate_writes_reports(tmp_path, capsys):
    raw = json.loads((CONFIGS / "small_cell.json").read_text())
    raw.update(repetitions=1, chunk_count=2, subslots_per_chunk=3)
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(raw))
    out = tmp_path / "out"
    assert cli.main(["simulate", "--config", str(cfg), "--out", str(out), "--seed", "5"]) == 0
    assert {p.name for p in out.iterdir()} == {
        "level_percentages.csv", "rate_cdf.csv", "objective_cdf.csv", "summary.json"}
    assert "proposed" in capsys.readouterr().out


def test_config_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"user_count": 5, "bogus": 1}')
    assert cli.main(["allocate", "--config", str(bad)]) == 1
    assert "error" in capsys.readouterr().err
