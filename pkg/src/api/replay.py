import argparse

from pydantic import ValidationError

from src.api.utils import validation_detail
from src.domain.errors import ParseError
from src.schemas import RunManifest
from src.storage.files import FileSessionManager


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("replay", help="run a saved manifest again")
    parser.add_argument("--manifest", required=True, help="manifest written by --save-manifest")
    parser.set_defaults(func=run)


def load_manifest(path: str) -> RunManifest:
    """
    Raises:
        ParseError: If the file is not a manifest.
    """
    with FileSessionManager(path).reader() as stream:
        text = stream.read()
    try:
        return RunManifest.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"invalid manifest '{path}': {validation_detail(e)}") from e


def run(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest)
    if manifest.command == "replay":
        raise ParseError("a manifest cannot replay another manifest")
    argv = manifest.to_argv()
    if args.log_level:
        argv = ["--log-level", args.log_level, *argv]
    return args.dispatch(argv)
