"""Command-line sweep driver.

    eof2xd-sweep --model tavis_cummings --n 0 --points 1001 --out vacuum.csv
    eof2xd-sweep --config sweep.json
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields

from .sweep import FORMATS, MODELS, ConfigError, InvariantError, SweepConfig, emit, run_sweep

_FLAG_TO_FIELD = {"out": "output_path"}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eof2xd-sweep", description="Sweep EoF dynamics over time.")
    ap.add_argument("--config", help="JSON file with SweepConfig fields; flags override it")
    ap.add_argument("--model", choices=MODELS)
    ap.add_argument("--alpha", type=float)
    ap.add_argument("--n", type=int, help="initial photon number (tavis_cummings only)")
    ap.add_argument("--tau-min", type=float)
    ap.add_argument("--tau-max", type=float)
    ap.add_argument("--points", type=int)
    ap.add_argument("--oracle", action="store_true", default=None, help="cross-check every point with the brute-force minimiser")
    ap.add_argument("--out", help="output path (default sweep.<format>)")
    ap.add_argument("--format", choices=FORMATS)
    return ap


def config_from_args(args: argparse.Namespace) -> SweepConfig:
    values: dict = {}
    if args.config:
        with open(args.config) as fh:
            values.update(json.load(fh))
        known = {f.name for f in fields(SweepConfig)}
        unknown = set(values) - known
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown config field")
    for key, val in vars(args).items():
        if key == "config" or val is None:
            continue
        values[_FLAG_TO_FIELD.get(key, key)] = val
    return SweepConfig(**values)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        result = run_sweep(cfg)
        path = emit(result)
    except (ConfigError, InvariantError, OSError, json.JSONDecodeError) as exc:
        print(f"eof2xd-sweep: error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {len(result.records)} points to {path}")
    for c in result.crossovers:
        print(f"crossover tau={c.tau:.6f} {c.left_winner} -> {c.right_winner}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
