import argparse
import sys
from typing import Sequence

from src.api import find, gen, quads, replay, span, utils, verify
from src.conf.logging import setup_logging
from src.domain.errors import TriplesError

COMMANDS = (gen, quads, find, verify, span, replay)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triples",
        description="Triple systems over finite abelian groups: good quadruples, "
        "layered configurations and their verification.",
    )
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        help="logging level for stderr (default from TRIPLES_LOG_LEVEL)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.add_parser(subparsers)
    parser.set_defaults(dispatch=run)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """
    Parse ``argv``, run the sub-command and map errors to exit codes.

    Exit codes: 0 success, 1 verification failed, 2 invalid input, 3 no configuration found.
    """
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    try:
        utils.save_manifest(args)
        return args.func(args)
    except TriplesError as e:
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(run())
