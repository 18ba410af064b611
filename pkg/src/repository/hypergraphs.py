from pathlib import Path

from src.domain.errors import DataValidationError, ParseError, TriplesError
from src.domain.models import Hypergraph3
from src.repository.triples import parse_ints
from src.services.hypergraphs import make_hypergraph
from src.storage.files import FileSessionManager, content_lines


class HypergraphRepository:
    def __init__(self, path: str | Path):
        self.files = FileSessionManager(path)

    def load(self) -> Hypergraph3:
        """
        Read a hypergraph file: the vertex count n, then one edge of 1 to 3 vertex ids per line.

        Raises:
            ParseError: If the vertex count or an edge line is malformed.
            DataValidationError: If an edge is out of range or repeated.
        """
        with self.files.reader() as stream:
            lines = list(content_lines(stream))
        if not lines:
            raise ParseError("missing vertex count")
        count_line, count_text = lines[0]
        (n,) = parse_ints(count_text, 1, count_line)
        edges: dict[tuple[int, ...], int] = {}
        for number, text in lines[1:]:
            vertices = parse_ints(text, len(text.split()), number)
            if not 1 <= len(vertices) <= 3:
                raise ParseError(f"an edge has 1 to 3 vertices, got '{text}'", number)
            key = tuple(sorted(set(vertices)))
            if key in edges:
                raise DataValidationError(
                    f"duplicate edge {key}, first seen at line {edges[key]}", number
                )
            try:
                make_hypergraph(n, [key])
            except TriplesError as e:
                raise DataValidationError(e.detail, number) from e
            edges[key] = number
        try:
            return make_hypergraph(n, edges)
        except TriplesError as e:
            raise DataValidationError(e.detail, count_line) from e

    def save(self, hypergraph: Hypergraph3) -> None:
        with self.files.writer() as stream:
            stream.write(f"{hypergraph.vertex_count}\n")
            for edge in hypergraph.edges:
                stream.write(" ".join(map(str, edge)) + "\n")
