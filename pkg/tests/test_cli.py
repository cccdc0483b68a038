import json

import pytest

from seqlab.cli import main
from seqlab.harness import read_records_csv
from seqlab.lzw import Alphabet, lzw_complexity


def test_complexity_command(capsys):
    main(["complexity", "ABABCBABAB", "--alphabet", "ABC"])
    assert capsys.readouterr().out.strip() == "6"


def test_complexity_default_alphabet(capsys):
    main(["complexity", "abab", "--symbols", "2"])
    assert capsys.readouterr().out.strip() == "3"


def test_gen_command(capsys):
    main(["gen", "--symbols", "3", "--complexity", "8", "--seed", "5"])
    text = capsys.readouterr().out.strip()
    assert lzw_complexity(text, Alphabet.default(3)) == 8


def test_gen_grid(tmp_path, capsys):
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps([{"k": 2, "c": 4}, {"k": 3, "c": 7}]))
    out = tmp_path / "manifest.jsonl"
    main(["gen", "--grid", str(grid), "--out", str(out)])
    lines = [json.loads(x) for x in out.read_text().splitlines()]
    assert [e["complexity"] for e in lines] == [4, 7]


def test_similarity_command(capsys):
    main(["similarity", "MARTHA", "MARHTA"])
    out = capsys.readouterr().out
    assert "jw=0.961111" in out


def test_train_and_forecast_commands(tmp_path, capsys):
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps([{"k": 2, "c": 4, "rng_seed": 3}]))
    manifest = tmp_path / "manifest.jsonl"
    main(["gen", "--grid", str(grid), "--out", str(manifest)])
    cfg = tmp_path / "train.json"
    cfg.write_text(json.dumps({
        "cell_kind": "gru", "units": 10, "learning_rate": 0.01,
        "min_length": 120, "window": 20, "max_epochs": 50,
        "stop_rule": "loss", "init_seed": 1,
    }))
    out = tmp_path / "run"
    main(["train", "--manifest", str(manifest), "--config", str(cfg),
          "--out", str(out)])
    assert (out / "checkpoint.npz").exists()
    report = json.loads((out / "report.json").read_text())
    assert report["epochs_run"] >= 1
    capsys.readouterr()
    main(["forecast", "--checkpoint", str(out / "checkpoint.npz"),
          "--manifest", str(manifest), "--horizon", "20", "--window", "20"])
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines[0]) == 20
    assert lines[1].startswith("dl=")


def test_experiment_command(tmp_path, capsys, monkeypatch):
    # shrink the low-small preset further by monkeypatching? no: run as-is is
    # too slow for a unit test, so use the saturation guard path instead.
    from seqlab import harness

    def fake_preset(name, small=False, base_seed=0):
        from seqlab.seedgen import SeedSpec
        return harness.ExperimentConfig(
            name="unit", seeds=(SeedSpec(2, 4, rng_seed=1),),
            min_lengths=(120,), cell_lrs=(("gru", 0.01),),
            unit_list=(8,), repeats=1, rng_base_seed=base_seed,
            window=20, horizon=20, max_epochs=30,
        )

    monkeypatch.setattr(harness, "make_preset", fake_preset)
    out = tmp_path / "exp"
    main(["experiment", "--preset", "low", "--small", "--out", str(out)])
    records = read_records_csv(out / "records.csv")
    assert len(records) == 1
    assert not records[0].failed
