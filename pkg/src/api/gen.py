import argparse

from src.api.utils import EXIT_OK, add_manifest_argument
from src.repository.triples import TripleSystemRepository
from src.services.groups import parse_group
from src.services.triples import SAMPLER, density, full_system, random_system
from src.storage.files import STDIO_PATH


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("gen", help="generate a triple file")
    parser.add_argument("--group", required=True, help='group such as "Z7" or "Z2xZ5"')
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--full", action="store_true", help="all n^2 triples")
    source.add_argument("--density", help="sample floor(c * n^2) triples, c in [0, 1]")
    parser.add_argument("--seed", type=int, default=0, help="seed of the sampler")
    parser.add_argument("--output", help="triple file to write (stdout when omitted)")
    add_manifest_argument(parser)
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    """
    Generate the full system or a random one and write it in the triple file format.

    Args:
        args (argparse.Namespace): Parsed ``gen`` arguments.

    Returns:
        int: The exit code.
    """
    group = parse_group(args.group)
    if args.full:
        system = full_system(group)
        comments = []
    else:
        system = random_system(group, args.density, args.seed)
        comments = [f"sampler={SAMPLER} seed={args.seed} density={args.density}"]
    summary = f"n={group.order} edges={len(system)} density={density(system):.6f}"

    if args.output:
        TripleSystemRepository(args.output).save(system, comments)
        print(summary)
    else:
        TripleSystemRepository(STDIO_PATH).save(system, [summary, *comments])
    return EXIT_OK
