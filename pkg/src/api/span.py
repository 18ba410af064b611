import argparse

from src.api.utils import EXIT_OK, add_manifest_argument, parse_ranks
from src.domain.models import Hypergraph3, TripleSystem
from src.repository.hypergraphs import HypergraphRepository
from src.repository.triples import TripleSystemRepository
from src.schemas import SpanResult
from src.services.groups import TRIVIAL_GROUP_TEXT
from src.services.hypergraphs import (
    edges_within,
    from_triple_system,
    max_edges_spanned,
    spanned_triples,
    subset_from_ranks,
)
from src.storage.files import STDIO_PATH, FileSessionManager, content_lines


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser(
        "span", help="count spanned triples or search for dense m-subsets"
    )
    parser.add_argument("--input", required=True, help="triple file or hypergraph file")
    query = parser.add_mutually_exclusive_group(required=True)
    query.add_argument("--m", type=int, help="subset size for the exact search")
    query.add_argument("--subset", help='element ranks such as "0 1 2"')
    parser.add_argument("--budget", type=int, help="maximum number of search expansions")
    add_manifest_argument(parser)
    parser.set_defaults(func=run)


def is_hypergraph_file(path: str) -> bool:
    """A hypergraph file starts with its vertex count; "1" is read as the trivial group."""
    if path == STDIO_PATH:
        return False
    with FileSessionManager(path).reader() as stream:
        first = next(content_lines(stream), None)
    return first is not None and first[1].isdigit() and first[1] != TRIVIAL_GROUP_TEXT


def load_input(path: str) -> TripleSystem | Hypergraph3:
    if is_hypergraph_file(path):
        return HypergraphRepository(path).load()
    return TripleSystemRepository(path).load()


def run(args: argparse.Namespace) -> int:
    source = load_input(args.input)
    if args.subset is not None:
        ranks = parse_ranks(args.subset)
        if isinstance(source, TripleSystem):
            subset = subset_from_ranks(source.order, ranks)
            print(f"spanned={len(spanned_triples(source, subset))}")
        else:
            subset = subset_from_ranks(source.vertex_count, ranks)
            print(f"spanned={edges_within(source, subset)}")
        return EXIT_OK

    hypergraph = from_triple_system(source) if isinstance(source, TripleSystem) else source
    k_max, witness = max_edges_spanned(hypergraph, args.m, args.budget)
    print(SpanResult(k_max=k_max, witness=witness).summary())
    return EXIT_OK
