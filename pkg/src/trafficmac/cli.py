"""Command-line front end: single runs, preset sweeps and figure rendering."""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .config import ConfigError, SimConfig
from .presets import PRESETS
from .runner import default_jobs, run_simulation, run_sweep

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
OUT_ENV = "TRAFFICMAC_OUT"


def _default_out() -> str:
    return os.environ.get(OUT_ENV, ".")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trafficmac",
        description="Agent-based simulator of MAC protocols for a road-traffic sensor network",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one simulation from a JSON config")
    run.add_argument("--config", required=True, help="path of the JSON config file")
    run.add_argument("--out", default=None, help=f"output directory (default: ${OUT_ENV} or .)")
    run.add_argument("--seed", type=int, default=None, help="override the config seed")

    sweep = sub.add_parser("sweep", help="run an experiment preset")
    sweep.add_argument("--preset", required=True)
    sweep.add_argument("--out", default=None)
    sweep.add_argument("--root-seed", type=int, default=None)
    sweep.add_argument("--jobs", type=int, default=default_jobs())
    sweep.add_argument("--plots", action="store_true",
                       help="also render the preset's figures next to the data")

    sub.add_parser("list-presets", help="list the available presets")

    report = sub.add_parser("report", help="render figures from a completed sweep")
    report.add_argument("--preset", required=True)
    report.add_argument("--dir", required=True, help="sweep output directory (contains the preset folder)")
    report.add_argument("--out", default=None, help="directory for the rendered images")
    return parser


def _list_presets() -> None:
    for name in sorted(PRESETS):
        print(f"{name}: {PRESETS[name].description}")


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            config = SimConfig.load(args.config)
            if args.seed is not None:
                config.seed = args.seed
                config.validate()
            out = args.out or _default_out()
            run_simulation(config, out)
            return EXIT_OK

        if args.command == "sweep":
            if args.preset not in PRESETS:
                print(f"unknown preset: {args.preset}", file=sys.stderr)
                print("available presets:", file=sys.stderr)
                for name in sorted(PRESETS):
                    print(f"  {name}", file=sys.stderr)
                return EXIT_CONFIG
            out = args.out or _default_out()
            run_sweep(args.preset, out, root_seed=args.root_seed, jobs=args.jobs)
            if args.plots:
                from .report import render_preset

                render_preset(args.preset, Path(out) / args.preset, Path(out) / args.preset)
            return EXIT_OK

        if args.command == "list-presets":
            _list_presets()
            return EXIT_OK

        if args.command == "report":
            if args.preset not in PRESETS:
                print(f"unknown preset: {args.preset}", file=sys.stderr)
                return EXIT_CONFIG
            from .report import render_preset

            sweep_dir = Path(args.dir)
            if sweep_dir.name != args.preset and (sweep_dir / args.preset).exists():
                sweep_dir = sweep_dir / args.preset
            out = Path(args.out) if args.out else sweep_dir
            for path in render_preset(args.preset, sweep_dir, out):
                print(path)
            return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
