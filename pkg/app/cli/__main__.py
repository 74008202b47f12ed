"""
Command-line entry point: python -m app.cli <command> [options]
"""

import argparse
import sys
from pathlib import Path

from .commands import COMMANDS, get_command
from .runner import RunConfig, run, write_report
from .types import LogUnit


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (default from SEED, else 0)")
    common.add_argument("--tol", type=float, default=None, help="projection tolerance")
    common.add_argument("--bits", action="store_true", help="report entropies in bits instead of nats")
    common.add_argument("--out", type=Path, default=None, help="output file")

    parser = argparse.ArgumentParser(
        prog="python -m app.cli",
        description="Many-party correlations as divergences from hierarchical Gibbs models.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        subparser = subparsers.add_parser(command.name.value, help=command.help, parents=[common])
        command.add_arguments(subparser)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    command = get_command(args.command)
    overrides = {key: value for key in ("seed", "tol") if (value := getattr(args, key)) is not None}
    config = RunConfig(
        command=args.command,
        arguments=command.arguments_from(args),
        units=LogUnit.BITS if args.bits else LogUnit.NATS,
        out=args.out,
        **overrides,
    )
    report = run(config)
    write_report(report)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
