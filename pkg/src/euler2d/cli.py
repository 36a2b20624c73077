"""Command-line interface.

Subcommands::

    euler2d solve <config-file> [--override key=value ...]
    euler2d cases
    euler2d check
"""

from __future__ import annotations

import argparse
import logging
import sys

from .cases import ConfigError, available_cases
from .checks import run_quick_checks
from .config import parse_config
from .runner import format_value, run


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="euler2d",
        description="Finite-volume Euler solver with two-state and "
                    "multidimensional convective-pressure split fluxes.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="increase log verbosity")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run a configured case")
    solve.add_argument("config", help="path to a key=value configuration file")
    solve.add_argument(
        "--override", action="append", default=[], metavar="KEY=VALUE",
        help="override a configuration key (repeatable)",
    )

    sub.add_parser("cases", help="list the available cases")
    sub.add_parser("check", help="run the quick invariant suite")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )

    if args.command == "cases":
        for name, description in available_cases().items():
            print(f"{name:15s} {description}")
        return 0

    if args.command == "check":
        results = run_quick_checks()
        failed = 0
        for name, ok, detail in results:
            print(f"{'PASS' if ok else 'FAIL'}  {name:28s} {detail}")
            failed += 0 if ok else 1
        return 1 if failed else 0

    # solve
    try:
        with open(args.config) as fh:
            text = fh.read()
    except OSError as err:
        print(f"error: cannot read config: {err}", file=sys.stderr)
        return 2
    try:
        config = parse_config(text, overrides=args.override)
    except ConfigError as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return 2

    result = run(config)
    for key, value in result.report.items():
        print(f"{key} = {format_value(value)}")
    print(f"report written to {result.output_dir}")
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
