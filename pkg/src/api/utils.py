import argparse
import re

from pydantic import ValidationError

from src.domain.errors import InvalidParameterError
from src.schemas import RunManifest
from src.storage.files import FileSessionManager

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_NOT_FOUND = 3

# argparse bookkeeping that never goes into a manifest
_INTERNAL_ARGS = {"command", "func", "dispatch", "log_level", "save_manifest", "output"}


def add_manifest_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--save-manifest",
        metavar="PATH",
        help="write a JSON manifest that `replay` runs again",
    )


def add_threads_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--threads", type=int, help="worker processes for quadruple enumeration"
    )


def parse_ranks(text: str) -> list[int]:
    """Split "0 1 2" or "0,1,2" into ranks."""
    parts = [part for part in re.split(r"[\s,]+", text.strip()) if part]
    try:
        return [int(part) for part in parts]
    except ValueError as e:
        raise InvalidParameterError(f"'{text}' is not a list of ranks") from e


def validation_detail(error: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(map(str, item['loc']))}: {item['msg']}" for item in error.errors()
    )


def describe_source(args: argparse.Namespace) -> str | None:
    if getattr(args, "full", False):
        return "full"
    if getattr(args, "density", None) is not None:
        return f"random({args.density}, {args.seed})"
    return getattr(args, "input", None)


def build_manifest(args: argparse.Namespace) -> RunManifest:
    params = {
        name: value
        for name, value in vars(args).items()
        if name not in _INTERNAL_ARGS and value is not None and value is not False
    }
    return RunManifest(
        command=args.command,
        group=getattr(args, "group", None),
        source=describe_source(args),
        params=params,
        output=getattr(args, "output", None),
    )


def save_manifest(args: argparse.Namespace) -> None:
    if not getattr(args, "save_manifest", None):
        return
    manifest = build_manifest(args)
    with FileSessionManager(args.save_manifest).writer() as stream:
        stream.write(manifest.model_dump_json(indent=2) + "\n")
