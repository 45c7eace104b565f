"""Batch front end: one problem document in, one result document out."""

import argparse
import logging
import sys
from dataclasses import replace
from typing import List, Optional

from kummerlab.codec import dumps
from kummerlab.commands import COMMANDS, CommandExecutor, render
from kummerlab.config import LOG_LEVELS, Config, Settings
from kummerlab.errors import InputError, KummerlabError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3
EXIT_UNKNOWN = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kummerlab",
        description="Exact computations with μ_p-torsors on p-adic annuli",
    )
    parser.add_argument("command", choices=sorted(COMMANDS), help="operation to run")
    parser.add_argument("--input", metavar="PATH", help="problem document (default: stdin)")
    parser.add_argument("--tsv", action="store_true", help="fiber-tree rows as TSV")
    parser.add_argument(
        "--strict", action="store_true", help="exit with 4 on an Unknown verdict"
    )
    parser.add_argument("--n-max", type=int, help="profile truncation")
    parser.add_argument("--max-iter", type=int, help="residue refinements per verdict")
    parser.add_argument("--i-max", type=int, help="length of recentered expansions")
    parser.add_argument("--seed", type=int, default=0, help="seed for random test classes")
    parser.add_argument("--log-level", choices=LOG_LEVELS, help="stderr log level")
    return parser


def _settings(args: argparse.Namespace, base: Settings) -> Settings:
    overrides = {}
    for name in ("n_max", "max_iter", "i_max"):
        value = getattr(args, name)
        if value is not None:
            if value < 1:
                raise InputError(f"--{name.replace('_', '-')} must be positive, got {value}")
            overrides[name] = value
    if args.log_level:
        overrides["log_level"] = args.log_level
    return replace(base, **overrides)


def run(args: argparse.Namespace, stdin=None, stdout=None) -> int:
    """Execute a parsed invocation and write its result

    Returns:
        Process exit code
    """
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    try:
        settings = _settings(args, Settings.from_env())
        logging.getLogger().setLevel(settings.log_level)
        if args.input:
            config = Config(config_path=args.input)
        else:
            config = Config(text=stdin.read())
        result = CommandExecutor.execute(args.command, config, settings, args.seed)
    except KummerlabError as e:
        print(f"error: {type(e).__name__}: {str(e)}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"error: {str(e)}", file=sys.stderr)
        return EXIT_INPUT

    if args.tsv:
        if result.tsv is None:
            print(f"error: '{args.command}' has no TSV output", file=sys.stderr)
            return EXIT_INPUT
        stdout.write(result.tsv)
    else:
        stdout.write(dumps(render(args.command, config.p, result)))

    if args.strict and result.unknown:
        logger.warning("%s produced an Unknown verdict", args.command)
        return EXIT_UNKNOWN
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        stream=sys.stderr, level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s"
    )
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    raise SystemExit(main())
