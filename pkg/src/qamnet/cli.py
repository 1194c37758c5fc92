"""Command-line entry points.

Each subcommand reads one JSON config (schema_version 1); --seed and
--out override the config's master seed and primary output path. On
success a single JSON summary line goes to stdout and the exit status is
0; every failure prints one machine-readable JSON line to stderr
({"error": <type>, "message": <text>}) and exits nonzero.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import harness

__all__ = ["main", "build_parser"]

_COMMANDS = {
    "train": harness.run_training,
    "eval": harness.run_eval,
    "noise-grid": harness.run_noise_grid,
    "equiv-sweep": harness.run_equivalence_sweep,
    "energy-table": harness.run_energy_table,
    "rf-gen": harness.run_rf_gen,
}


class _Parser(argparse.ArgumentParser):
    """Argparse variant whose usage errors are JSON lines on stderr."""

    def error(self, message: str):
        print(json.dumps({"error": "UsageError", "message": message}), file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qamnet", description="QAM photonic network experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "train": "train one model; writes checkpoint and history per the config",
        "eval": "evaluate a checkpoint (optionally PTQ-folded, optionally noisy)",
        "noise-grid": "PTQ accuracy over a (QAM side, readout SNR) grid",
        "equiv-sweep": "QAT accuracy of the equivalence variants over constellation sizes",
        "energy-table": "emit the level/hardware/energy equivalence table",
        "rf-gen": "generate a synthetic RF modulation dataset CSV",
    }
    for name in _COMMANDS:
        p = sub.add_parser(name, help=helps[name], parents=[], add_help=True)
        p.add_argument("--config", default=None, help="JSON experiment config")
        p.add_argument("--seed", type=int, default=None, help="override the master seed")
        p.add_argument("--out", default=None, help="override the primary output path")
    return parser


def _load(args) -> harness.ExperimentConfig:
    if args.config is None:
        cfg = harness.ExperimentConfig(experiment=args.command, dataset={})
        if args.seed is not None:
            cfg.seed = args.seed
        if args.out is not None:
            cfg.out = args.out
        return cfg
    return harness.load_config(args.config, seed_override=args.seed, out_override=args.out)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load(args)
        if args.command == "train" and args.out is not None:
            cfg.checkpoint = args.out
        result = _COMMANDS[args.command](cfg)
        if isinstance(result, tuple):  # experiment runners return (records, path)
            records, path = result
            summary = {"command": args.command, "rows": len(records), "out": str(path)}
        else:
            summary = {"command": args.command, **result}
        print(json.dumps(_jsonable(summary)))
        return 0
    except SystemExit:
        raise
    except Exception as exc:  # noqa: BLE001 - the CLI contract is a JSON error line
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2


def _jsonable(obj):
    """Floats that JSON cannot carry become their repr tokens."""
    import math

    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


if __name__ == "__main__":
    raise SystemExit(main())
