from pathlib import Path
from typing import Iterable

from src.domain.errors import DataValidationError, ParseError, TriplesError
from src.domain.models import Edge, TripleSystem
from src.services.groups import format_group, parse_group
from src.services.triples import build_system
from src.storage.files import FileSessionManager, content_lines


def parse_ints(text: str, count: int, line: int) -> tuple[int, ...]:
    parts = text.split()
    if len(parts) != count:
        raise ParseError(f"expected {count} integers, got '{text}'", line)
    try:
        return tuple(int(part) for part in parts)
    except ValueError as e:
        raise ParseError(f"expected {count} integers, got '{text}'", line) from e


class TripleSystemRepository:
    def __init__(self, path: str | Path):
        self.files = FileSessionManager(path)

    def load(self) -> TripleSystem:
        """
        Read a triple file: the group header line, then one "a b" edge per line.

        Returns:
            TripleSystem: The stored system.

        Raises:
            ParseError: If a line is malformed or the header is missing.
            DataValidationError: If an edge is out of range or repeated.
        """
        with self.files.reader() as stream:
            lines = list(content_lines(stream))
        if not lines:
            raise ParseError("missing group header")
        header_line, header = lines[0]
        try:
            group = parse_group(header)
        except TriplesError as e:
            raise ParseError(e.detail, header_line) from e
        n = group.order
        edges: dict[Edge, int] = {}
        for number, text in lines[1:]:
            a, b = parse_ints(text, 2, number)
            if not (0 <= a < n and 0 <= b < n):
                raise DataValidationError(
                    f"edge ({a}, {b}) outside group of order {n}", number
                )
            if (a, b) in edges:
                raise DataValidationError(
                    f"duplicate edge ({a}, {b}), first seen at line {edges[(a, b)]}",
                    number,
                )
            edges[(a, b)] = number
        return build_system(group, edges)

    def save(self, system: TripleSystem, comments: Iterable[str] = ()) -> None:
        """
        Write ``system`` in the triple file format, edges in ascending order.

        Args:
            system (TripleSystem): The system to store.
            comments (Iterable[str]): Lines written as '#' comments after the header.
        """
        with self.files.writer() as stream:
            stream.write(format_group(system.group) + "\n")
            for comment in comments:
                stream.write(f"# {comment}\n")
            for a, b in sorted(system.edges):
                stream.write(f"{a} {b}\n")
