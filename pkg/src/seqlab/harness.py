"""Experiment grids: configure, run, repeat, summarize, and persist trials.

A trial is one (seed string, min_length, cell, layers, units, lr, stop rule,
repeat) combination: generate the seed, build the dataset, train, forecast,
score.  Records are emitted in deterministic grid order with repeats innermost;
failures are recorded, never dropped.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np

from .dataset import DatasetSpec, build_dataset
from .forecast import forecast_and_score
from .rnn import TrainConfig, train
from .seedgen import SeedSpec, SeedString, generate_seed

CSV_COLUMNS = [
    "name", "seed_k", "seed_complexity", "min_length", "cell", "layers",
    "units", "lr", "stop_rule", "repeat", "epochs", "stop_reason",
    "wall_seconds", "loss", "accuracy", "dl", "jw", "failed",
]

_INT_COLUMNS = {"seed_k", "seed_complexity", "min_length", "layers", "units",
                "repeat", "epochs"}
_FLOAT_COLUMNS = {"lr", "wall_seconds", "loss", "accuracy", "dl", "jw"}


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    seeds: tuple  # tuple[SeedSpec, ...]
    min_lengths: tuple
    cell_lrs: tuple          # tuple[(cell_kind, learning_rate), ...]
    layer_counts: tuple = (1,)
    unit_list: tuple = (100,)
    total_unit_targets: tuple = ()  # when set, units per layer = round(target/layers)
    stop_rules: tuple = ("loss",)
    repeats: int = 5
    rng_base_seed: int = 0
    window: int = 100
    horizon: int = 100
    batch_size: int = 32
    max_epochs: int = 999

    def __post_init__(self):
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        for name in ("seeds", "min_lengths", "cell_lrs", "layer_counts", "stop_rules"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be non-empty")
        if not self.unit_list and not self.total_unit_targets:
            raise ValueError("need unit_list or total_unit_targets")


@dataclass
class TrialRecord:
    name: str
    seed_k: int
    seed_complexity: int
    min_length: int
    cell: str
    layers: int
    units: int
    lr: float
    stop_rule: str
    repeat: int
    epochs: int
    stop_reason: str
    wall_seconds: float
    loss: float
    accuracy: float
    dl: float
    jw: float
    failed: bool


@dataclass
class SummaryStats:
    key: tuple
    median: float
    q1: float
    q3: float
    whisker_low: float
    whisker_high: float
    outliers: list
    count: int


# ---------------------------------------------------------------------------
# Grid enumeration and execution


def _layer_unit_pairs(cfg: ExperimentConfig):
    if cfg.total_unit_targets:
        pairs = []
        for layers in cfg.layer_counts:
            for target in cfg.total_unit_targets:
                pairs.append((layers, max(1, round(target / layers))))
        return pairs
    return [(layers, u) for layers in cfg.layer_counts for u in cfg.unit_list]


def enumerate_trials(cfg: ExperimentConfig):
    """Deterministic grid order, repeats innermost."""
    trials = []
    i = 0
    for spec in cfg.seeds:
        for min_length in cfg.min_lengths:
            for cell, lr in cfg.cell_lrs:
                for layers, units in _layer_unit_pairs(cfg):
                    for stop_rule in cfg.stop_rules:
                        for rep in range(cfg.repeats):
                            trials.append({
                                "index": i, "spec": spec, "min_length": min_length,
                                "cell": cell, "lr": lr, "layers": layers,
                                "units": units, "stop_rule": stop_rule, "repeat": rep,
                            })
                            i += 1
    return trials


def _run_trial(cfg: ExperimentConfig, trial: dict, seed_cache: dict) -> TrialRecord:
    spec: SeedSpec = trial["spec"]
    base = dict(
        name=cfg.name, seed_k=spec.alphabet_size,
        seed_complexity=spec.target_complexity, min_length=trial["min_length"],
        cell=trial["cell"], layers=trial["layers"], units=trial["units"],
        lr=trial["lr"], stop_rule=trial["stop_rule"], repeat=trial["repeat"],
    )
    try:
        if spec not in seed_cache:
            seed_cache[spec] = generate_seed(spec)
        seed: SeedString = seed_cache[spec]
        states = np.random.SeedSequence(
            [cfg.rng_base_seed, trial["index"]]
        ).generate_state(2)
        ds = build_dataset(
            seed,
            DatasetSpec(min_length=trial["min_length"], window=cfg.window),
            rng_seed=int(states[0]),
        )
        tc = TrainConfig(
            cell_kind=trial["cell"], units=trial["units"], layers=trial["layers"],
            learning_rate=trial["lr"], stop_rule=trial["stop_rule"],
            batch_size=cfg.batch_size, max_epochs=cfg.max_epochs,
            init_seed=int(states[1]),
        )
        net, report = train(ds, tc)
        result = forecast_and_score(net, ds.train_window, ds.v, cfg.horizon,
                                    seed.alphabet)
        return TrialRecord(
            **base, epochs=report.epochs_run, stop_reason=report.stop_reason,
            wall_seconds=report.wall_seconds, loss=report.final_loss,
            accuracy=report.final_accuracy, dl=result.scores.dl,
            jw=result.scores.jw, failed=False,
        )
    except Exception as e:  # recorded, never dropped
        return TrialRecord(
            **base, epochs=0, stop_reason=f"error: {type(e).__name__}: {e}",
            wall_seconds=0.0, loss=math.nan, accuracy=math.nan,
            dl=math.nan, jw=math.nan, failed=True,
        )


def _run_trial_worker(args):
    cfg, trial = args
    return _run_trial(cfg, trial, {})


def run_experiment(cfg: ExperimentConfig, workers: int = 1) -> list[TrialRecord]:
    trials = enumerate_trials(cfg)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_trial_worker,
                                    [(cfg, t) for t in trials], chunksize=1))
    else:
        cache: dict = {}
        records = [_run_trial(cfg, t, cache) for t in trials]
    return records


def saturation_study(cfg: ExperimentConfig, workers: int = 1) -> list[TrialRecord]:
    """Fixed-architecture sweep over increasing complexity, one symbol count."""
    ks = {s.alphabet_size for s in cfg.seeds}
    if len(ks) != 1:
        raise ValueError(f"saturation study needs a single symbol count, got {sorted(ks)}")
    return run_experiment(cfg, workers=workers)


def mean_similarity_by_complexity(records: list[TrialRecord], value: str = "dl"):
    """(complexity, mean score) pairs over non-failed records, ascending."""
    groups: dict[int, list[float]] = {}
    for r in records:
        if not r.failed:
            groups.setdefault(r.seed_complexity, []).append(getattr(r, value))
    return [(c, float(np.mean(vs))) for c, vs in sorted(groups.items())]


# ---------------------------------------------------------------------------
# Summaries


def tukey_stats(values, key=()) -> SummaryStats:
    v = np.asarray(sorted(values), dtype=float)
    q1, med, q3 = np.percentile(v, [25, 50, 75])  # linear interpolation (type 7)
    iqr = q3 - q1
    lo_fence = q1 - 1.5 * iqr
    hi_fence = q3 + 1.5 * iqr
    inside = v[(v >= lo_fence) & (v <= hi_fence)]
    outliers = v[(v < lo_fence) | (v > hi_fence)]
    return SummaryStats(
        key=tuple(key), median=float(med), q1=float(q1), q3=float(q3),
        whisker_low=float(inside.min()), whisker_high=float(inside.max()),
        outliers=[float(x) for x in outliers], count=len(v),
    )


def summarize(records, group_by: list[str], value: str) -> list[SummaryStats]:
    """Per-group Tukey box statistics of one record field.

    Failed records (NaN values) are skipped with a warning.
    """
    groups: dict[tuple, list[float]] = {}
    order: list[tuple] = []
    for r in records:
        x = getattr(r, value) if not isinstance(r, dict) else r[value]
        key = tuple(
            getattr(r, g) if not isinstance(r, dict) else r[g] for g in group_by
        )
        if isinstance(x, float) and math.isnan(x):
            continue
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(float(x))
    out = []
    for key in order:
        if not groups[key]:
            warnings.warn(f"empty group {key} omitted")
            continue
        out.append(tukey_stats(groups[key], key=key))
    return out


def bin_complexities(records: list[TrialRecord], n_bins: int):
    """Label each record with an equal-width complexity bin over [min, max].

    Returns (labeled, edges) where labeled pairs each record with its bin
    label string "lo-hi".
    """
    if n_bins < 1:
        raise ValueError("n_bins must be >= 1")
    comps = [r.seed_complexity for r in records]
    lo, hi = min(comps), max(comps)
    edges = np.linspace(lo, hi, n_bins + 1)
    width = (hi - lo) / n_bins if hi > lo else 1.0
    labeled = []
    for r in records:
        b = min(int((r.seed_complexity - lo) / width), n_bins - 1) if hi > lo else 0
        labeled.append((r, f"{edges[b]:g}-{edges[b + 1]:g}"))
    return labeled, edges


# ---------------------------------------------------------------------------
# Persistence


def write_records_csv(path, records: list[TrialRecord]):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(CSV_COLUMNS)
        for r in records:
            d = asdict(r)
            w.writerow([repr(d[c]) if c in _FLOAT_COLUMNS else d[c]
                        for c in CSV_COLUMNS])


def read_records_csv(path) -> list[TrialRecord]:
    out = []
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header: {reader.fieldnames}")
        for row in reader:
            kw = {}
            for c in CSV_COLUMNS:
                if c in _INT_COLUMNS:
                    kw[c] = int(row[c])
                elif c in _FLOAT_COLUMNS:
                    kw[c] = float(row[c])
                elif c == "failed":
                    kw[c] = row[c] == "True"
                else:
                    kw[c] = row[c]
            out.append(TrialRecord(**kw))
    return out


def write_summary_csv(path, records: list[TrialRecord]):
    """Box statistics per (cell, lr, stop_rule) for the main value fields."""
    group_by = ["cell", "lr", "stop_rule"]
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(group_by + ["value", "median", "q1", "q3",
                               "whisker_low", "whisker_high", "n_outliers", "count"])
        for value in ("wall_seconds", "epochs", "dl", "jw"):
            for s in summarize(records, group_by, value):
                w.writerow(list(s.key) + [
                    value, repr(s.median), repr(s.q1), repr(s.q3),
                    repr(s.whisker_low), repr(s.whisker_high),
                    len(s.outliers), s.count,
                ])


def write_manifest(path, seeds: list[SeedString], specs: list[SeedSpec]):
    with open(path, "w") as f:
        for seed, spec in zip(seeds, specs):
            f.write(json.dumps({
                "text": seed.text, "k": seed.alphabet.size,
                "complexity": seed.complexity, "rng_seed": spec.rng_seed,
            }) + "\n")


def write_config_echo(path, cfg: ExperimentConfig):
    d = asdict(cfg)
    d["seeds"] = [asdict(s) for s in cfg.seeds]
    with open(path, "w") as f:
        json.dump(d, f, indent=2)


def persist_experiment(out_dir, cfg: ExperimentConfig, records: list[TrialRecord]):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_records_csv(out / "records.csv", records)
    write_summary_csv(out / "summary.csv", records)
    write_config_echo(out / "config.json", cfg)
    specs = list(cfg.seeds)
    seeds = []
    for s in specs:
        try:
            seeds.append(generate_seed(s))
        except Exception:
            seeds.append(SeedString(text="", alphabet=None, complexity=0))
    with open(out / "manifest.jsonl", "w") as f:
        for seed, spec in zip(seeds, specs):
            if seed.text:
                f.write(json.dumps({
                    "text": seed.text, "k": seed.alphabet.size,
                    "complexity": seed.complexity, "rng_seed": spec.rng_seed,
                }) + "\n")
            else:
                f.write(json.dumps({
                    "text": None, "k": spec.alphabet_size,
                    "complexity": spec.target_complexity, "rng_seed": spec.rng_seed,
                    "failed": True,
                }) + "\n")


# ---------------------------------------------------------------------------
# Presets


def _seed_specs(pairs, base_seed, max_length=None):
    specs = []
    for i, (k, c) in enumerate(pairs):
        ml = max_length if max_length is not None else max(2400, 4 * c)
        specs.append(SeedSpec(alphabet_size=k, target_complexity=c,
                              max_length=ml, rng_seed=base_seed * 100003 + i))
    return tuple(specs)


def _geometric_units(lo=25, hi=250, steps=10):
    return tuple(int(round(x)) for x in np.geomspace(lo, hi, steps))


def make_preset(name: str, small: bool = False, base_seed: int = 0) -> ExperimentConfig:
    """The paper-shaped grids plus desk-scale '-small' variants."""
    if name == "initial":
        if small:
            pairs = [(k, c) for k in (2, 5) for c in (20, 35)]
            return ExperimentConfig(
                name="initial-small", seeds=_seed_specs(pairs, base_seed),
                min_lengths=(300,), cell_lrs=tuple(
                    (cell, lr) for cell in ("lstm", "gru") for lr in (0.01,)
                ),
                layer_counts=(1, 2), total_unit_targets=(50,), unit_list=(),
                stop_rules=("loss",), repeats=2, rng_base_seed=base_seed,
                window=50, horizon=50,
            )
        pairs = [(k, c) for k in (2, 5, 10, 20) for c in (20, 35, 50)]
        return ExperimentConfig(
            name="initial", seeds=_seed_specs(pairs, base_seed),
            min_lengths=(500,), cell_lrs=tuple(
                (cell, lr) for cell in ("lstm", "gru")
                for lr in (0.001, 0.01, 0.1)
            ),
            layer_counts=(1, 2, 3), total_unit_targets=(50, 100, 200),
            unit_list=(), stop_rules=("accuracy", "loss"), repeats=5,
            rng_base_seed=base_seed,
        )
    if name == "low":
        if small:
            pairs = [(2, 4), (3, 6), (4, 9), (5, 12)]
            return ExperimentConfig(
                name="low-small", seeds=_seed_specs(pairs, base_seed),
                min_lengths=(500,), cell_lrs=(("lstm", 0.01), ("gru", 0.01)),
                layer_counts=(1,), unit_list=(25, 66),
                stop_rules=("loss",), repeats=2, rng_base_seed=base_seed,
                window=50, horizon=50,
            )
        pairs = [(k, c) for k in range(2, 7) for c in range(2, 13) if c >= k]
        return ExperimentConfig(
            name="low", seeds=_seed_specs(pairs, base_seed),
            min_lengths=(1100,), cell_lrs=tuple(
                (cell, lr) for cell in ("lstm", "gru") for lr in (0.001, 0.01)
            ),
            layer_counts=(1,), unit_list=_geometric_units(),
            stop_rules=("loss",), repeats=5, rng_base_seed=base_seed,
        )
    if name == "high":
        if small:
            pairs = [(10, 150), (33, 250)]
            return ExperimentConfig(
                name="high-small", seeds=_seed_specs(pairs, base_seed),
                min_lengths=(600,), cell_lrs=(("lstm", 0.01), ("gru", 0.0035)),
                layer_counts=(1,), unit_list=(50,),
                stop_rules=("loss",), repeats=2, rng_base_seed=base_seed,
                window=50, horizon=50,
            )
        grid = np.linspace(1000, 1850, 168)
        lengths = {10: 5000, 33: 7500, 52: 10000}
        pairs = []
        for k in (10, 33, 52):
            picks = np.linspace(0, 167, 100).round().astype(int)
            pairs.extend((k, int(round(grid[i]))) for i in picks)
        specs = _seed_specs(pairs, base_seed, max_length=None)
        return ExperimentConfig(
            name="high", seeds=specs,
            min_lengths=tuple(sorted(set(lengths.values()))),
            cell_lrs=(("lstm", 0.01), ("gru", 0.0035)),
            layer_counts=(1,), unit_list=(100,),
            stop_rules=("loss",), repeats=5, rng_base_seed=base_seed,
        )
    if name == "saturation":
        if small:
            pairs = [(52, c) for c in (60, 120, 240, 480)]
            return ExperimentConfig(
                name="saturation-small", seeds=_seed_specs(pairs, base_seed),
                min_lengths=(600,), cell_lrs=(("lstm", 0.01), ("gru", 0.0035)),
                layer_counts=(1,), unit_list=(25,),
                stop_rules=("loss",), repeats=2, rng_base_seed=base_seed,
                window=50, horizon=50,
            )
        pairs = [(52, int(round(c))) for c in np.geomspace(100, 2000, 12)]
        return ExperimentConfig(
            name="saturation", seeds=_seed_specs(pairs, base_seed),
            min_lengths=(5000,), cell_lrs=(("lstm", 0.01), ("gru", 0.0035)),
            layer_counts=(1,), unit_list=(100,),
            stop_rules=("loss",), repeats=5, rng_base_seed=base_seed,
        )
    raise ValueError(f"unknown preset {name!r}")
