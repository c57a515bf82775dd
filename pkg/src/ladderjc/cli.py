"""Command-line front end: evolve | wigner | verify | sweep.

Exit codes: 0 success, 2 config error, 3 truncation warning in strict mode,
4 verification failure.
"""

from __future__ import annotations

import argparse
import sys

from .scenario import (
    ConfigError,
    load_config,
    resolve_output_dir,
    run_evolve,
    run_sweep,
    run_verify,
    run_wigner,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_TRUNCATION = 3
EXIT_VERIFY = 4


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", required=True, help="scenario JSON file")
    sub.add_argument("--out", default=None, help="output directory (overrides config/env)")
    sub.add_argument("--strict", action="store_true", help="turn truncation warnings into exit 3")
    sub.add_argument("--threads", type=int, default=1, help="worker threads across time samples")
    sub.add_argument("--seed", type=int, default=None, help="reserved; the dynamics is deterministic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ladderjc",
        description="Ladder three-level atom + cavity scenarios: evolution, Wigner maps, verification.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("evolve", "write populations.csv and photon_stats.csv over the time grid"),
        ("wigner", "write phase-space grids for the configured times and conditionings"),
        ("verify", "compare the block propagator against the brute-force path"),
        ("sweep", "run evolve over the cartesian product of sweep lists"),
    ):
        _add_common(commands.add_parser(name, help=text))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        out_dir = resolve_output_dir(args.out, config)
        if args.command == "evolve":
            warnings_list = run_evolve(config, out_dir, strict=args.strict, threads=args.threads)
        elif args.command == "wigner":
            warnings_list = run_wigner(config, out_dir, strict=args.strict, threads=args.threads)
        elif args.command == "sweep":
            warnings_list = run_sweep(config, out_dir, strict=args.strict, threads=args.threads)
        else:
            report, ok = run_verify(config, out_dir, threads=args.threads)
            if not ok:
                print(
                    "verification failed: " + ", ".join(report["failing_metrics"]),
                    file=sys.stderr,
                )
                return EXIT_VERIFY
            return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    for line in warnings_list:
        print(f"warning: {line}", file=sys.stderr)
    if args.strict and any("truncation" in w for w in warnings_list):
        return EXIT_TRUNCATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
