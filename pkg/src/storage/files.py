import contextlib
import os
import sys
import tempfile
from pathlib import Path
from typing import Iterator, TextIO

from src.domain.errors import ParseError

STDIO_PATH = "-"


class FileSessionManager:
    """
    Text file access for the repositories.

    A write session goes to a temporary sibling file that replaces the target only
    when the session ends without error; on error the partial file is discarded.
    """

    def __init__(self, path: str | Path):
        self.path = str(path)

    @contextlib.contextmanager
    def reader(self) -> Iterator[TextIO]:
        if self.path == STDIO_PATH:
            yield sys.stdin
            return
        try:
            stream = open(self.path, encoding="utf-8")
        except OSError as e:
            raise ParseError(f"cannot read '{self.path}': {e.strerror}") from e
        with stream:
            yield stream

    @contextlib.contextmanager
    def writer(self) -> Iterator[TextIO]:
        if self.path == STDIO_PATH:
            yield sys.stdout
            return
        target = Path(self.path)
        fd, tmp_name = tempfile.mkstemp(
            dir=target.parent or ".", prefix=f".{target.name}.", suffix=".tmp"
        )
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as stream:
                yield stream
            os.replace(tmp_name, target)
        except BaseException:
            with contextlib.suppress(FileNotFoundError):
                os.unlink(tmp_name)
            raise


def content_lines(stream: TextIO) -> Iterator[tuple[int, str]]:
    """Yield (line number, stripped text) for lines that are neither blank nor '#' comments."""
    for number, raw in enumerate(stream, start=1):
        text = raw.split("#", 1)[0].strip()
        if text:
            yield number, text
