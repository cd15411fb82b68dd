"""Command-line entry point: ``diga evolve | gd | synth``.

Exit codes: 0 ok, 1 runtime failure, 2 configuration error, 3 data/IO error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path

from .arch_search import ArchSearchConfig
from .data_io import load_dataset, synth_dataset, write_dataset
from .engine import EvolutionConfig, final_report, format_table, run_evolution
from .errors import ConfigError, DatasetError
from .gd_baseline import GDConfig, gd_train
from .model import as_arch
from .variation import MutationConfig

EXIT_RUNTIME, EXIT_CONFIG, EXIT_DATA = 1, 2, 3

EVOLVE_DEFAULTS = {
    "max_dims": [12288, 20, 5, 1],
    "stop_cost": 0.035,
    "size": 5,
    "max_iter": 20_000,
    "seed": 42,
    "rate_start": 0.9,
    "rate_end": 0.1,
    "schedule_iters": 20_000,
    "mutation_scale": 0.008,
    "cr": 0.9,
    "par": 0.3,
    "pitch_span": 2,
    "train": None,
    "test": None,
    "normalize": None,
}

GD_DEFAULTS = {
    "arch": None,
    "learning_rate": 0.001,
    "iterations": 3000,
    "seed": 42,
    "train": None,
    "test": None,
    "normalize": None,
}

CURVE_COLUMNS = ["iteration", "best_cost", "leader_best", "follower_best", "mutation_rate", "swapped"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="diga", description="Dual-agent neuroevolution for binary classifiers.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress every 1000 iterations")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("evolve", help="train with the dual-agent genetic algorithm")
    ev.add_argument("--config", help="JSON file of run settings; flags override it")
    ev.add_argument("--max-dims", dest="max_dims", type=int_list)
    ev.add_argument("--stop-cost", dest="stop_cost", type=float)
    ev.add_argument("--size", type=int)
    ev.add_argument("--max-iter", dest="max_iter", type=int)
    ev.add_argument("--seed", type=int)
    ev.add_argument("--mutation-scale", dest="mutation_scale", type=float)
    ev.add_argument("--rate-start", dest="rate_start", type=float)
    ev.add_argument("--rate-end", dest="rate_end", type=float)
    ev.add_argument("--schedule-iters", dest="schedule_iters", type=int,
                    help="iterations over which the mutation rate decays")
    ev.add_argument("--cr", type=float)
    ev.add_argument("--par", type=float)
    ev.add_argument("--pitch-span", dest="pitch_span", type=int)
    _data_flags(ev)

    gd = sub.add_parser("gd", help="train the gradient-descent baseline")
    gd.add_argument("--config")
    gd.add_argument("--arch", type=int_list)
    gd.add_argument("--lr", dest="learning_rate", type=float)
    gd.add_argument("--iters", dest="iterations", type=int)
    gd.add_argument("--seed", type=int)
    _data_flags(gd)

    sy = sub.add_parser("synth", help="write a synthetic dataset file")
    sy.add_argument("--features", type=int, default=50)
    sy.add_argument("--examples", type=int, default=100)
    sy.add_argument("--seed", type=int, default=42)
    sy.add_argument("--separable", action="store_true")
    sy.add_argument("--out", required=True)
    return p


def _data_flags(p):
    p.add_argument("--train")
    p.add_argument("--test")
    p.add_argument("--normalize", type=float, help="divide features by this (255 for 8-bit pixels)")
    p.add_argument("--out", required=True, help="output directory")


def resolve(args: argparse.Namespace, defaults: dict) -> dict:
    """defaults < config file < explicit flags < DIGA_SEED."""
    settings = dict(defaults)
    if args.config:
        try:
            with open(args.config) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}")
        if not isinstance(doc, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = sorted(set(doc) - set(defaults))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        settings.update(doc)
    for key in defaults:
        val = getattr(args, key, None)
        if val is not None:
            settings[key] = val
    env_seed = os.environ.get("DIGA_SEED")
    if env_seed:
        try:
            settings["seed"] = int(env_seed)
        except ValueError:
            raise ConfigError(f"DIGA_SEED must be an integer, got {env_seed!r}")
    if not settings.get("train"):
        raise ConfigError("missing --train (path to the training dataset)")
    return settings


def evolution_config(s: dict) -> EvolutionConfig:
    try:
        return _evolution_config(s)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def _evolution_config(s: dict) -> EvolutionConfig:
    max_dims = as_arch(s["max_dims"])
    return EvolutionConfig(
        max_dims=max_dims,
        stop_cost=float(s["stop_cost"]),
        size=int(s["size"]),
        max_iter=int(s["max_iter"]),
        seed=int(s["seed"]),
        mutation=MutationConfig(float(s["rate_start"]), float(s["rate_end"]), int(s["schedule_iters"]),
                                float(s["mutation_scale"])),
        arch_search=ArchSearchConfig(max_dims, float(s["cr"]), float(s["par"]), s["pitch_span"]),
    )


def load_data(s: dict):
    train = load_dataset(s["train"], s["normalize"])
    test = load_dataset(s["test"], s["normalize"]) if s.get("test") else None
    return train, test


def _num(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    return format(x, ".17g")


def write_outputs(out_dir, record, settings: dict) -> dict:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "curve.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CURVE_COLUMNS)
        for r in record.curve:
            w.writerow([_num(getattr(r, c)) for c in CURVE_COLUMNS])
    report = final_report(record)
    with open(out / "report.json", "w") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    with open(out / "config.resolved.json", "w") as fh:
        json.dump(settings, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return report


def cmd_evolve(args) -> int:
    s = resolve(args, EVOLVE_DEFAULTS)
    cfg = evolution_config(s)
    s["max_dims"] = list(cfg.max_dims)
    train, test = load_data(s)
    record = run_evolution(cfg, train, test)
    report = write_outputs(args.out, record, s)
    print(format_table(report))
    print(f"iterations={record.iterations} best_cost={report['final_cost']:.5f} "
          f"swaps={report['swap_count']} wall_time={record.wall_time:.1f}s")
    return 0


def cmd_gd(args) -> int:
    s = resolve(args, GD_DEFAULTS)
    if s["arch"] is None:
        raise ConfigError("missing --arch (comma-separated layer sizes)")
    try:
        cfg = GDConfig(arch=as_arch(s["arch"]), iterations=int(s["iterations"]),
                       learning_rate=float(s["learning_rate"]), seed=int(s["seed"]))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc
    s["arch"] = list(cfg.arch)
    train, test = load_data(s)
    record = gd_train(cfg, train, test)
    report = write_outputs(args.out, record, s)
    print(format_table(report))
    print(f"iterations={record.iterations} cost={report['final_cost']:.5f} wall_time={record.wall_time:.1f}s")
    return 0


def cmd_synth(args) -> int:
    if args.features < 1 or args.examples < 1:
        raise ConfigError("--features and --examples must be positive")
    seed = int(os.environ.get("DIGA_SEED") or args.seed)
    data = synth_dataset(args.features, args.examples, seed, args.separable)
    write_dataset(args.out, data.X, data.Y)
    return 0


COMMANDS = {"evolve": cmd_evolve, "gd": cmd_gd, "synth": cmd_synth}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"diga: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"diga: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DatasetError, OSError) as exc:
        print(f"diga: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001 - last-resort diagnostic
        print(f"diga: runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
