"""Command-line front end: complexity, gen, similarity, train, forecast, experiment."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .checkpoint import load_checkpoint, save_checkpoint
from .dataset import DatasetSpec, build_dataset
from .forecast import forecast_and_score
from .lzw import Alphabet, lzw_complexity
from .rnn import TrainConfig, train
from .seedgen import SeedSpec, SeedString, generate_seed
from .textmetrics import similarity


def _cmd_complexity(args):
    if args.alphabet:
        a = Alphabet.from_string(args.alphabet)
    else:
        a = Alphabet.default(args.symbols)
    print(lzw_complexity(args.string, a))


def _cmd_gen(args):
    if args.grid:
        with open(args.grid) as f:
            cfg = json.load(f)
        specs = [SeedSpec(alphabet_size=e["k"], target_complexity=e["c"],
                          max_length=e.get("max_length", max(2400, 4 * e["c"])),
                          rng_seed=e.get("rng_seed", i))
                 for i, e in enumerate(cfg)]
        with open(args.out, "w") as f:
            for spec in specs:
                seed = generate_seed(spec)
                f.write(json.dumps({
                    "text": seed.text, "k": spec.alphabet_size,
                    "complexity": seed.complexity, "rng_seed": spec.rng_seed,
                }) + "\n")
        print(f"wrote {len(specs)} seed strings to {args.out}")
        return
    spec = SeedSpec(alphabet_size=args.symbols, target_complexity=args.complexity,
                    max_length=args.max_length or max(2400, 4 * args.complexity),
                    rng_seed=args.seed)
    print(generate_seed(spec).text)


def _cmd_similarity(args):
    s = similarity(args.a, args.b)
    print(f"dl={s.dl:.6f} jw={s.jw:.6f}")


def _load_manifest_entry(path, index=0):
    with open(path) as f:
        lines = [json.loads(x) for x in f if x.strip()]
    e = lines[index]
    a = Alphabet.default(e["k"])
    return SeedString(text=e["text"], alphabet=a, complexity=e["complexity"])


def _cmd_train(args):
    seed = _load_manifest_entry(args.manifest, args.entry)
    with open(args.config) as f:
        cfg = json.load(f)
    ds = build_dataset(
        seed,
        DatasetSpec(min_length=cfg.get("min_length", 1100),
                    window=cfg.get("window", 100)),
        rng_seed=cfg.get("split_seed", 0),
    )
    tc = TrainConfig(
        cell_kind=cfg["cell_kind"], units=cfg["units"],
        learning_rate=cfg["learning_rate"], layers=cfg.get("layers", 1),
        max_epochs=cfg.get("max_epochs", 999),
        stop_rule=cfg.get("stop_rule", "loss"),
        batch_size=cfg.get("batch_size", 32),
        init_seed=cfg.get("init_seed", 0),
    )
    net, report = train(ds, tc)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    save_checkpoint(out / "checkpoint.npz", net, tc)
    with open(out / "report.json", "w") as f:
        json.dump({
            "epochs_run": report.epochs_run, "stop_reason": report.stop_reason,
            "final_loss": report.final_loss,
            "final_accuracy": report.final_accuracy,
            "wall_seconds": report.wall_seconds,
            "loss_curve": report.loss_curve,
            "accuracy_curve": report.accuracy_curve,
        }, f, indent=2)
    print(f"{report.stop_reason} after {report.epochs_run} epochs "
          f"(loss={report.final_loss:.4f}, acc={report.final_accuracy:.4f})")


def _cmd_forecast(args):
    net, cfg = load_checkpoint(args.checkpoint)
    seed = _load_manifest_entry(args.manifest, args.entry)
    window = (cfg or {}).get("window") or args.window
    ds = build_dataset(
        seed,
        DatasetSpec(min_length=(cfg or {}).get("min_length", 1100), window=window),
        rng_seed=(cfg or {}).get("split_seed", 0),
    )
    result = forecast_and_score(net, ds.train_window, ds.v, args.horizon,
                                seed.alphabet)
    print(result.predicted)
    print(f"dl={result.scores.dl:.6f} jw={result.scores.jw:.6f}")


def _cmd_experiment(args):
    cfg = harness.make_preset(args.preset, small=args.small,
                              base_seed=args.base_seed)
    records = harness.run_experiment(cfg, workers=args.workers)
    harness.persist_experiment(args.out, cfg, records)
    failed = sum(r.failed for r in records)
    print(f"{len(records)} trials ({failed} failed) -> {args.out}")
    if failed:
        sys.exit(1)


def build_parser():
    p = argparse.ArgumentParser(
        prog="seqlab",
        description="Symbolic sequence learning lab: LZW-complexity seed strings, "
                    "from-scratch LSTM/GRU training, and forecast scoring.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("complexity", help="LZW complexity of a string")
    c.add_argument("string")
    c.add_argument("--symbols", type=int,
                   help="alphabet size (first k of a-z, A-Z, 0-9)")
    c.add_argument("--alphabet", help="explicit alphabet characters, in order")
    c.set_defaults(func=_cmd_complexity)

    g = sub.add_parser("gen", help="generate seed strings of target complexity")
    g.add_argument("--symbols", type=int)
    g.add_argument("--complexity", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--max-length", type=int, default=None)
    g.add_argument("--grid", help="JSON list of {k, c, rng_seed} entries")
    g.add_argument("--out", default="manifest.jsonl")
    g.set_defaults(func=_cmd_gen)

    s = sub.add_parser("similarity", help="DL and JW similarity of two strings")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=_cmd_similarity)

    t = sub.add_parser("train", help="train one network from a seed manifest")
    t.add_argument("--manifest", required=True)
    t.add_argument("--entry", type=int, default=0)
    t.add_argument("--config", required=True)
    t.add_argument("--out", required=True)
    t.set_defaults(func=_cmd_train)

    f = sub.add_parser("forecast", help="forecast from a checkpoint and score")
    f.add_argument("--checkpoint", required=True)
    f.add_argument("--manifest", required=True)
    f.add_argument("--entry", type=int, default=0)
    f.add_argument("--horizon", type=int, default=100)
    f.add_argument("--window", type=int, default=100)
    f.set_defaults(func=_cmd_forecast)

    e = sub.add_parser("experiment", help="run an experiment preset")
    e.add_argument("--preset", required=True,
                   choices=["initial", "low", "high", "saturation"])
    e.add_argument("--small", action="store_true")
    e.add_argument("--out", required=True)
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--base-seed", type=int, default=0)
    e.set_defaults(func=_cmd_experiment)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    args.func(args)


if __name__ == "__main__":
    main()
