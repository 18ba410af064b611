import argparse

from pydantic import ValidationError

from src.api.utils import (
    EXIT_NOT_FOUND,
    EXIT_OK,
    add_manifest_argument,
    add_threads_argument,
    validation_detail,
)
from src.domain.errors import InvalidParameterError
from src.domain.models import NotFound
from src.repository.configurations import ConfigurationRepository
from src.repository.triples import TripleSystemRepository
from src.schemas import SearchParams
from src.services.finder import find_configuration, verify_configuration
from src.storage.files import STDIO_PATH


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("find", help="run the layered configuration search")
    parser.add_argument("--input", required=True, help='triple file, "-" for stdin')
    parser.add_argument("--t", type=int, required=True, help="number of layers, at least 1")
    parser.add_argument("--min-bucket", type=int, help="smallest acceptable q_max")
    parser.add_argument("--min-edges", type=int, help="smallest acceptable restricted system")
    parser.add_argument("--output", help="configuration file to write (stdout when omitted)")
    add_threads_argument(parser)
    add_manifest_argument(parser)
    parser.set_defaults(func=run)


def search_params(args: argparse.Namespace) -> SearchParams:
    """
    Build SearchParams from the flags; unset flags take the configured defaults.

    Raises:
        InvalidParameterError: If a value is out of range.
    """
    values = {
        "t": args.t,
        "min_bucket": args.min_bucket,
        "min_edges": args.min_edges,
        "workers": args.threads,
    }
    try:
        return SearchParams(**{k: v for k, v in values.items() if v is not None})
    except ValidationError as e:
        raise InvalidParameterError(validation_detail(e)) from e


def run(args: argparse.Namespace) -> int:
    params = search_params(args)
    system = TripleSystemRepository(args.input).load()
    result = find_configuration(system, params)
    if isinstance(result, NotFound):
        print(f"not-found reason={result.reason.value} level={result.level}")
        return EXIT_NOT_FOUND

    report = verify_configuration(system, result)
    ConfigurationRepository(args.output or STDIO_PATH).save(result, report)
    if args.output:
        print(report.summary())
    return EXIT_OK
