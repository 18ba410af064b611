import argparse

from src.api.utils import EXIT_OK, add_manifest_argument, add_threads_argument
from src.conf.config import settings
from src.repository.triples import TripleSystemRepository
from src.schemas import QuadrupleSummary
from src.services.quadruples import enumerate_good_quadruples, q_max


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("quads", help="enumerate good quadruples")
    parser.add_argument("--input", required=True, help='triple file, "-" for stdin')
    parser.add_argument(
        "--histogram", action="store_true", help='add "x1 x2 x3 q" lines per bucket'
    )
    parser.add_argument(
        "--dump", action="store_true", help="add every quadruple under its bucket header"
    )
    add_threads_argument(parser)
    add_manifest_argument(parser)
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    system = TripleSystemRepository(args.input).load()
    index = enumerate_good_quadruples(system, args.threads or settings.WORKERS)
    if index.buckets:
        vector, q = q_max(index)
        summary = QuadrupleSummary(
            total=index.total, buckets=len(index), qmax=q, vector=tuple(vector)
        )
    else:
        summary = QuadrupleSummary(total=0, buckets=0, qmax=0)
    print(summary.summary())

    if args.histogram:
        for x, q in index.histogram():
            print(f"{x.x1} {x.x2} {x.x3} {q}")
    if args.dump:
        for x, bucket in index.buckets.items():
            print(f"bucket {x.x1} {x.x2} {x.x3} {len(bucket)}")
            for quadruple in bucket:
                print(" ".join(map(str, quadruple)))
    return EXIT_OK
