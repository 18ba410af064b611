import re
from pathlib import Path

from src.domain.errors import ParseError, TriplesError
from src.domain.models import Configuration, GoodQuadruple, ProductVector
from src.repository.triples import parse_ints
from src.schemas import VerificationReport
from src.services.groups import format_group, parse_group
from src.storage.files import FileSessionManager, content_lines

SECTIONS = ("GROUP", "T", "Y_VECTORS", "LAYERS", "ELEMENTS", "TRIPLES", "SUMMARY")

_LAYER_HEADER = re.compile(r"^L(\d+)$")
_SUMMARY = re.compile(
    r"^nu=(\d+), spanned=(\d+), required=(-?\d+), pass=(true|false)$"
)


class ConfigurationRepository:
    def __init__(self, path: str | Path):
        self.files = FileSessionManager(path)

    def save(self, cfg: Configuration, report: VerificationReport) -> None:
        """
        Write ``cfg`` as sections GROUP, T, Y_VECTORS, LAYERS, ELEMENTS, TRIPLES, SUMMARY.

        Args:
            cfg (Configuration): The configuration to store.
            report (VerificationReport): Its verification, written as the SUMMARY line.
        """
        with self.files.writer() as stream:
            stream.write(f"GROUP\n{format_group(cfg.group)}\n")
            stream.write(f"T\n{cfg.t}\n")
            stream.write("Y_VECTORS\n")
            for y in cfg.y_vectors:
                stream.write(" ".join(map(str, y)) + "\n")
            stream.write("LAYERS\n")
            for i, layer in enumerate(cfg.layers, start=1):
                stream.write(f"L{i}\n")
                for q in layer:
                    stream.write(" ".join(map(str, q)) + "\n")
            stream.write("ELEMENTS\n")
            stream.write(" ".join(map(str, cfg.elements)) + "\n")
            stream.write("TRIPLES\n")
            for triple in cfg.triples:
                stream.write(" ".join(map(str, triple)) + "\n")
            stream.write(f"SUMMARY\n{report.summary()}\n")

    def load(self) -> Configuration:
        """
        Read a configuration file.

        The SUMMARY line must be present and well formed, but its values are not
        trusted; verification recomputes them.

        Raises:
            ParseError: If a section is missing, out of order or malformed.
        """
        with self.files.reader() as stream:
            lines = list(content_lines(stream))
        sections: dict[str, list[tuple[int, str]]] = {}
        current = None
        for number, text in lines:
            if text in SECTIONS:
                expected = SECTIONS[len(sections)] if len(sections) < len(SECTIONS) else None
                if text != expected:
                    raise ParseError(f"section {text} out of order, expected {expected}", number)
                current = sections.setdefault(text, [])
            elif current is None:
                raise ParseError(f"content before the GROUP section: '{text}'", number)
            else:
                current.append((number, text))
        missing = [name for name in SECTIONS if name not in sections]
        if missing:
            raise ParseError(f"missing section(s) {', '.join(missing)}")

        group_line, group_text = self._single(sections, "GROUP")
        try:
            group = parse_group(group_text)
        except TriplesError as e:
            raise ParseError(e.detail, group_line) from e
        t_line, t_text = self._single(sections, "T")
        (t,) = parse_ints(t_text, 1, t_line)
        if t < 1:
            raise ParseError(f"t={t} must be at least 1", t_line)

        y_vectors = tuple(
            ProductVector(*parse_ints(text, 3, number)) for number, text in sections["Y_VECTORS"]
        )
        layers = self._layers(sections["LAYERS"])
        elements = tuple(
            v
            for number, text in sections["ELEMENTS"]
            for v in parse_ints(text, len(text.split()), number)
        )
        triples = tuple(parse_ints(text, 3, number) for number, text in sections["TRIPLES"])
        summary_line, summary = self._single(sections, "SUMMARY")
        if not _SUMMARY.match(summary):
            raise ParseError(f"malformed summary '{summary}'", summary_line)
        return Configuration(
            group=group,
            t=t,
            y_vectors=y_vectors,
            layers=layers,
            elements=elements,
            triples=triples,
        )

    @staticmethod
    def _single(sections: dict[str, list[tuple[int, str]]], name: str) -> tuple[int, str]:
        body = sections[name]
        if len(body) != 1:
            raise ParseError(f"section {name} must hold exactly one line, got {len(body)}")
        return body[0]

    @staticmethod
    def _layers(body: list[tuple[int, str]]) -> tuple[tuple[GoodQuadruple, ...], ...]:
        layers: list[list[GoodQuadruple]] = []
        for number, text in body:
            header = _LAYER_HEADER.match(text)
            if header:
                if int(header.group(1)) != len(layers) + 1:
                    raise ParseError(f"expected layer L{len(layers) + 1}, got {text}", number)
                layers.append([])
            elif not layers:
                raise ParseError("quadruple before the first layer header", number)
            else:
                layers[-1].append(GoodQuadruple(*parse_ints(text, 4, number)))
        return tuple(tuple(layer) for layer in layers)
