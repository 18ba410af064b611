import argparse

from src.api.utils import EXIT_OK, EXIT_VERIFICATION_FAILED, add_manifest_argument
from src.repository.configurations import ConfigurationRepository
from src.repository.triples import TripleSystemRepository
from src.services.finder import verify_configuration


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="check a configuration file against S")
    parser.add_argument("--input", required=True, help="triple file of S0")
    parser.add_argument("--config", required=True, help="configuration file")
    add_manifest_argument(parser)
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    system = TripleSystemRepository(args.input).load()
    cfg = ConfigurationRepository(args.config).load()
    report = verify_configuration(system, cfg)
    print(
        f"nu={report.nu} spanned={report.spanned} required={report.required} "
        f"layer_bounds_ok={str(report.layer_bounds_ok).lower()} "
        f"pass={str(report.passed).lower()}"
    )
    for reason in report.reasons:
        print(f"reason: {reason}")
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED
