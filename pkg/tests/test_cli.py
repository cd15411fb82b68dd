import csv
import json
import os
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from diga.cli import main
from diga.data_io import load_dataset

SMALL = ["--max-dims", "10,3,3,1", "--size", "3", "--max-iter", "15", "--stop-cost", "1e-9"]


@pytest.fixture(scope="module")
def train_file(tmp_path_factory):
    p = tmp_path_factory.mktemp("data") / "train.diga"
    assert main(["synth", "--features", "10", "--examples", "25", "--separable", "--out", str(p)]) == 0
    return str(p)


@pytest.fixture
def no_env_seed(monkeypatch):
    monkeypatch.delenv("DIGA_SEED", raising=False)


def _schema():
    return json.loads(resources.files("diga").joinpath("schemas/report.schema.json").read_text())


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_evolve_outputs(tmp_path, train_file, no_env_seed):
    out = tmp_path / "run"
    assert main(["evolve", *SMALL, "--train", train_file, "--test", train_file, "--out", str(out)]) == 0
    rows = _rows(out / "curve.csv")
    assert [int(r["iteration"]) for r in rows] == list(range(16))
    assert list(rows[0]) == ["iteration", "best_cost", "leader_best", "follower_best", "mutation_rate", "swapped"]
    report = json.loads((out / "report.json").read_text())
    jsonschema.validate(report, _schema())
    assert report["final_cost"] == float(rows[-1]["best_cost"])
    resolved = json.loads((out / "config.resolved.json").read_text())
    assert resolved["max_dims"] == [10, 3, 3, 1] and resolved["seed"] == 42 and resolved["cr"] == 0.9


def test_csv_numbers_round_trip(tmp_path, train_file, no_env_seed):
    out = tmp_path / "run"
    main(["evolve", *SMALL, "--train", train_file, "--out", str(out)])
    for r in _rows(out / "curve.csv"):
        for key in ("best_cost", "follower_best", "mutation_rate"):
            x = float(r[key])
            assert format(x, ".17g") == r[key]


def test_stop_cost_one_gives_single_row(tmp_path, train_file, no_env_seed):
    out = tmp_path / "run"
    assert main(["evolve", "--max-dims", "10,3,1", "--size", "3", "--stop-cost", "1.0", "--train", train_file, "--out", str(out)]) == 0
    assert len(_rows(out / "curve.csv")) == 1


def test_byte_identical_runs(tmp_path, train_file, no_env_seed):
    outs = [tmp_path / "a", tmp_path / "b"]
    for o in outs:
        assert main(["evolve", *SMALL, "--train", train_file, "--out", str(o)]) == 0
    for name in ("curve.csv", "report.json", "config.resolved.json"):
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()


def test_env_seed_overrides(tmp_path, train_file, monkeypatch):
    monkeypatch.setenv("DIGA_SEED", "7")
    main(["evolve", *SMALL, "--seed", "1", "--train", train_file, "--out", str(tmp_path / "env")])
    monkeypatch.delenv("DIGA_SEED")
    main(["evolve", *SMALL, "--seed", "7", "--train", train_file, "--out", str(tmp_path / "flag")])
    assert json.loads((tmp_path / "env" / "config.resolved.json").read_text())["seed"] == 7
    assert (tmp_path / "env" / "curve.csv").read_bytes() == (tmp_path / "flag" / "curve.csv").read_bytes()


def test_config_file_and_flag_precedence(tmp_path, train_file, no_env_seed):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_dims": [10, 2, 1], "size": 2, "max_iter": 3, "stop_cost": 1e-9, "par": 0.5}))
    out = tmp_path / "run"
    assert main(["evolve", "--config", str(cfg), "--max-iter", "4", "--train", train_file, "--out", str(out)]) == 0
    resolved = json.loads((out / "config.resolved.json").read_text())
    assert resolved["max_iter"] == 4 and resolved["par"] == 0.5 and resolved["max_dims"] == [10, 2, 1]


@pytest.mark.parametrize(
    "argv",
    [
        ["evolve", "--out", "{tmp}/o"],
        ["evolve", "--max-dims", "10,0,1", "--train", "{train}", "--out", "{tmp}/o"],
        ["evolve", "--stop-cost", "-1", "--max-dims", "10,3,1", "--train", "{train}", "--out", "{tmp}/o"],
        ["evolve", "--max-dims", "10,a,1", "--train", "{train}", "--out", "{tmp}/o"],
        ["evolve", "--max-dims", "10,3,1", "--size", "4", "--train", "{train}", "--out", "{tmp}/o"],
        ["gd", "--arch", "10,0,1", "--train", "{train}", "--out", "{tmp}/o"],
        ["gd", "--train", "{train}", "--out", "{tmp}/o"],
        ["synth", "--examples", "0", "--out", "{tmp}/x.diga"],
        ["bogus"],
    ],
)
def test_config_errors_exit_2(argv, tmp_path, train_file, no_env_seed, capsys):
    argv = [a.format(tmp=tmp_path, train=train_file) for a in argv]
    assert main(argv) == 2
    err = capsys.readouterr().err.strip()
    assert err and "\n" not in err


def test_missing_train_names_flag(tmp_path, no_env_seed, capsys):
    assert main(["evolve", "--out", str(tmp_path / "o")]) == 2
    assert "--train" in capsys.readouterr().err


def test_unknown_config_key(tmp_path, train_file, no_env_seed):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"stop_cost": 0.1, "colour": "red"}))
    assert main(["evolve", "--config", str(cfg), "--train", train_file, "--out", str(tmp_path / "o")]) == 2


def test_feature_mismatch_is_config_error(tmp_path, train_file, no_env_seed):
    assert main(["evolve", "--max-dims", "12,3,1", "--train", train_file, "--out", str(tmp_path / "o")]) == 2


def test_data_errors_exit_3(tmp_path, train_file, no_env_seed):
    bad = tmp_path / "bad.diga"
    bad.write_bytes(b"DIGA1garbage")
    assert main(["evolve", "--max-dims", "10,3,1", "--size", "2", "--train", str(bad), "--out", str(tmp_path / "o")]) == 3
    assert main(["evolve", "--max-dims", "10,3,1", "--size", "2", "--train", str(tmp_path / "nope"), "--out", str(tmp_path / "o")]) == 3
    assert main(["synth", "--out", str(tmp_path / "no_such_dir" / "x.diga")]) == 3


def test_gd_lr_zero(tmp_path, train_file, no_env_seed):
    out = tmp_path / "gd"
    assert main(["gd", "--arch", "10,4,1", "--lr", "0", "--iters", "10", "--train", train_file, "--out", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    jsonschema.validate(report, _schema())
    assert report["final_cost"] == report["initial_cost"]
    assert report["follower"] == []
    rows = _rows(out / "curve.csv")
    assert len(rows) == 11 and rows[0]["follower_best"] == "" and rows[0]["mutation_rate"] == ""


def test_synth_defaults_and_repeatability(tmp_path, monkeypatch):
    monkeypatch.delenv("DIGA_SEED", raising=False)
    a, b = tmp_path / "a.diga", tmp_path / "b.diga"
    assert main(["synth", "--out", str(a)]) == 0
    assert main(["synth", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    d = load_dataset(a)
    assert d.X.shape == (50, 100)


def test_module_entry_point(tmp_path):
    env = {k: v for k, v in os.environ.items() if k != "DIGA_SEED"}
    r = subprocess.run([sys.executable, "-m", "diga", "synth", "--examples", "0", "--out", str(tmp_path / "x")],
                       capture_output=True, text=True, env=env)
    assert r.returncode == 2 and r.stderr.startswith("diga:")
