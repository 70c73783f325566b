"""RDF metadata ingestion: N-Triples parsing, pattern queries, video bundles.

The parser covers the line-oriented N-Triples subset only (no Turtle
prefixes). The query engine answers the one fixed conjunctive pattern
the pipeline needs: videos whose fragments carry annotations produced
by a given ASR tool.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import IO, Iterable, Iterator, Mapping, Union

from .errors import OrderError, ParseError, SchemaError

# Namespace constants for the annotation-selection query.
OA_NS = "http://w3.org/ns/oa#"
DCTERMS_NS = "http://purl.org/dc/terms/"
OA_ANNOTATED_BY = OA_NS + "annotatedBy"
OA_HAS_TARGET = OA_NS + "hasTarget"
DCTERMS_IS_PART_OF = DCTERMS_NS + "isPartOf"


@dataclass(frozen=True)
class IRI:
    value: str

    def __post_init__(self):
        if not self.value:
            raise ValueError("IRI must be non-empty")


@dataclass(frozen=True)
class BlankNode:
    label: str

    def __post_init__(self):
        if not self.label:
            raise ValueError("blank node label must be non-empty")


@dataclass(frozen=True)
class Literal:
    lexical: str
    language: str | None = None
    datatype: str | None = None

    def __post_init__(self):
        if self.language is not None and self.datatype is not None:
            raise ValueError("a literal carries at most one of language tag or datatype")


Subject = Union[IRI, BlankNode]
Object = Union[IRI, BlankNode, Literal]


@dataclass(frozen=True)
class Triple:
    subject: Subject
    predicate: IRI
    object: Object


def term_string(term: Object) -> str:
    """Plain string form of a term (IRI value, ``_:label``, or lexical form)."""
    if isinstance(term, IRI):
        return term.value
    if isinstance(term, BlankNode):
        return "_:" + term.label
    return term.lexical


class TripleSet:
    """Immutable, deduplicated collection of triples with lookup indexes."""

    def __init__(self, triples: Iterable[Triple]):
        self._triples = frozenset(triples)
        by_predicate: dict[str, list[Triple]] = {}
        by_subject: dict[Subject, list[Triple]] = {}
        for t in sorted(self._triples, key=serialize_triple):
            by_predicate.setdefault(t.predicate.value, []).append(t)
            by_subject.setdefault(t.subject, []).append(t)
        self._by_predicate = {k: tuple(v) for k, v in by_predicate.items()}
        self._by_subject = {k: tuple(v) for k, v in by_subject.items()}

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(sorted(self._triples, key=serialize_triple))

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __eq__(self, other) -> bool:
        if not isinstance(other, TripleSet):
            return NotImplemented
        return self._triples == other._triples

    def __hash__(self) -> int:
        return hash(self._triples)

    def matching(
        self,
        subject: Subject | None = None,
        predicate: str | None = None,
        obj: Object | None = None,
    ) -> Iterator[Triple]:
        """All triples matching the given pattern (None = wildcard)."""
        if subject is not None:
            pool: Iterable[Triple] = self._by_subject.get(subject, ())
        elif predicate is not None:
            pool = self._by_predicate.get(predicate, ())
        else:
            pool = iter(self)
        for t in pool:
            if predicate is not None and t.predicate.value != predicate:
                continue
            if obj is not None and t.object != obj:
                continue
            yield t


_IRI_FORBIDDEN = set(' <>"{}|^`\\')


class _StatementParser:
    """Single-statement recursive-descent parser over one line."""

    def __init__(self, line: str, lineno: int):
        self.line = line
        self.pos = 0
        self.lineno = lineno

    def error(self, reason: str) -> ParseError:
        return ParseError(self.lineno, reason)

    def skip_ws(self) -> None:
        while self.pos < len(self.line) and self.line[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        return self.line[self.pos] if self.pos < len(self.line) else ""

    def parse_iri(self) -> IRI:
        assert self.peek() == "<"
        self.pos += 1
        start = self.pos
        while self.pos < len(self.line):
            c = self.line[self.pos]
            if c == ">":
                value = self.line[start : self.pos]
                self.pos += 1
                if not value:
                    raise self.error("empty IRI")
                return IRI(value)
            if c in _IRI_FORBIDDEN:
                raise self.error(f"character {c!r} not allowed inside IRI")
            self.pos += 1
        raise self.error("unterminated IRI (missing '>')")

    def parse_blank(self) -> BlankNode:
        assert self.line.startswith("_:", self.pos)
        self.pos += 2
        start = self.pos
        while self.pos < len(self.line) and (
            self.line[self.pos].isalnum() or self.line[self.pos] in "_-."
        ):
            self.pos += 1
        label = self.line[start : self.pos]
        if not label:
            raise self.error("empty blank node label")
        return BlankNode(label)

    def parse_quoted(self) -> str:
        assert self.peek() == '"'
        self.pos += 1
        out = []
        while self.pos < len(self.line):
            c = self.line[self.pos]
            if c == '"':
                self.pos += 1
                return "".join(out)
            if c == "\\":
                self.pos += 1
                if self.pos >= len(self.line):
                    break
                esc = self.line[self.pos]
                simple = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
                          '"': '"', "'": "'", "\\": "\\"}
                if esc in simple:
                    out.append(simple[esc])
                    self.pos += 1
                elif esc in "uU":
                    width = 4 if esc == "u" else 8
                    hexdigits = self.line[self.pos + 1 : self.pos + 1 + width]
                    if len(hexdigits) != width:
                        raise self.error("truncated unicode escape")
                    try:
                        out.append(chr(int(hexdigits, 16)))
                    except ValueError:
                        raise self.error(f"bad unicode escape \\{esc}{hexdigits}") from None
                    self.pos += 1 + width
                else:
                    raise self.error(f"unknown escape \\{esc}")
            else:
                out.append(c)
                self.pos += 1
        raise self.error("unbalanced quotes in literal")

    def parse_literal(self) -> Literal:
        lexical = self.parse_quoted()
        if self.peek() == "@":
            self.pos += 1
            start = self.pos
            while self.pos < len(self.line) and (
                self.line[self.pos].isalnum() or self.line[self.pos] == "-"
            ):
                self.pos += 1
            tag = self.line[start : self.pos]
            if not tag:
                raise self.error("empty language tag")
            return Literal(lexical, language=tag)
        if self.line.startswith("^^", self.pos):
            self.pos += 2
            if self.peek() != "<":
                raise self.error("datatype must be an IRI")
            return Literal(lexical, datatype=self.parse_iri().value)
        return Literal(lexical)

    def parse_statement(self) -> Triple:
        self.skip_ws()
        if self.peek() == "<":
            subject: Subject = self.parse_iri()
        elif self.line.startswith("_:", self.pos):
            subject = self.parse_blank()
        else:
            raise self.error("subject must be an IRI or blank node")
        self.skip_ws()
        if self.peek() != "<":
            raise self.error("predicate must be an IRI")
        predicate = self.parse_iri()
        self.skip_ws()
        if self.peek() == "<":
            obj: Object = self.parse_iri()
        elif self.line.startswith("_:", self.pos):
            obj = self.parse_blank()
        elif self.peek() == '"':
            obj = self.parse_literal()
        else:
            raise self.error("object must be an IRI, blank node, or literal")
        self.skip_ws()
        if self.peek() != ".":
            raise self.error("statement must end with '.'")
        self.pos += 1
        self.skip_ws()
        if self.pos < len(self.line) and not self.line.startswith("#", self.pos):
            raise self.error("unexpected trailing content after '.'")
        return Triple(subject, predicate, obj)


def parse_ntriples(source: Union[bytes, str, IO[bytes], IO[str]]) -> TripleSet:
    """Parse N-Triples text into a deduplicated :class:`TripleSet`.

    Blank lines and ``#`` comment lines are skipped. Raises
    :class:`ParseError` with the 1-based line number on the first
    malformed statement.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    triples = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        triples.append(_StatementParser(line, lineno).parse_statement())
    return TripleSet(triples)


_LITERAL_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _quote(lexical: str) -> str:
    return '"' + "".join(_LITERAL_ESCAPES.get(c, c) for c in lexical) + '"'


def serialize_term(term: Object) -> str:
    if isinstance(term, IRI):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    base = _quote(term.lexical)
    if term.language is not None:
        return f"{base}@{term.language}"
    if term.datatype is not None:
        return f"{base}^^<{term.datatype}>"
    return base


def serialize_triple(triple: Triple) -> str:
    return (
        f"{serialize_term(triple.subject)} {serialize_term(triple.predicate)} "
        f"{serialize_term(triple.object)} ."
    )


def serialize_ntriples(store: TripleSet) -> str:
    """Canonical serialization: sorted statements, one per line."""
    return "".join(serialize_triple(t) + "\n" for t in store)


def query_videos_with_asr(store: TripleSet, asr_tool_iri: str) -> set[str]:
    """Distinct video URLs whose fragments carry annotations by the given tool.

    Matches the conjunctive pattern: an annotation node is
    ``annotatedBy`` the tool and ``hasTarget`` a fragment, and that
    fragment ``isPartOf`` the video URL.
    """
    tool = IRI(asr_tool_iri)
    urls: set[str] = set()
    for t in store.matching(predicate=OA_ANNOTATED_BY, obj=tool):
        for target in store.matching(subject=t.subject, predicate=OA_HAS_TARGET):
            fragment = target.object
            if isinstance(fragment, Literal):
                continue
            for part in store.matching(subject=fragment, predicate=DCTERMS_IS_PART_OF):
                urls.add(term_string(part.object))
    return urls


class EntitySource(Enum):
    ASR = "ASR"
    OCR = "OCR"
    VISUAL_CONCEPT = "VISUAL_CONCEPT"


@dataclass(frozen=True)
class KeyEntity:
    label: str
    source: EntitySource
    frequency: int

    def __post_init__(self):
        if not self.label.strip():
            raise ValueError("entity label must be non-empty")
        if self.frequency < 1:
            raise ValueError("entity frequency must be >= 1")


@dataclass(frozen=True)
class TimeSegment:
    start: int
    end: int
    transcript: str

    def __post_init__(self):
        if self.start < 0:
            raise ValueError("segment start must be non-negative")
        if self.end <= self.start:
            raise ValueError("segment end must be after start")


@dataclass(frozen=True)
class VideoRecord:
    video_id: str
    url: str
    title: str
    language: str
    segments: tuple[TimeSegment, ...] = field(default_factory=tuple)
    entities: tuple[KeyEntity, ...] = field(default_factory=tuple)


def _require(doc, key: str, kind: type, what: str):
    if not isinstance(doc, Mapping):
        raise SchemaError(f"{what} must be a JSON object")
    if key not in doc:
        raise SchemaError(f"{what} is missing required field {key!r}")
    value = doc[key]
    if kind is int and isinstance(value, bool):
        raise SchemaError(f"{what} field {key!r} must be {kind.__name__}")
    if not isinstance(value, kind):
        raise SchemaError(f"{what} field {key!r} must be {kind.__name__}")
    return value


def load_video_record(metadata: Mapping, transcript: Mapping) -> VideoRecord:
    """Build a validated :class:`VideoRecord` from two structured documents.

    ``metadata`` supplies id/url/title/language/entities; ``transcript``
    supplies the timestamped segments. Entities with the same
    case-normalized label are merged: frequencies summed, first-seen
    label spelling and source kept.
    """
    video_id = _require(metadata, "id", str, "metadata")
    url = _require(metadata, "url", str, "metadata")
    title = _require(metadata, "title", str, "metadata")
    language = _require(metadata, "language", str, "metadata")
    if not (len(language) == 2 and language.isalpha() and language.islower()):
        raise SchemaError(f"language must be a two-letter lowercase code, got {language!r}")

    merged: dict[str, tuple[str, EntitySource, int]] = {}
    for i, raw in enumerate(_require(metadata, "entities", list, "metadata")):
        what = f"entity {i}"
        label = _require(raw, "label", str, what).strip()
        if not label:
            raise SchemaError(f"{what} has an empty label")
        source_name = _require(raw, "source", str, what)
        try:
            source = EntitySource(source_name)
        except ValueError:
            raise SchemaError(f"{what} has unknown source {source_name!r}") from None
        frequency = _require(raw, "frequency", int, what)
        if frequency < 1:
            raise SchemaError(f"{what} frequency must be >= 1")
        key = label.lower()
        if key in merged:
            first_label, first_source, total = merged[key]
            merged[key] = (first_label, first_source, total + frequency)
        else:
            merged[key] = (label, source, frequency)
    entities = tuple(KeyEntity(lbl, src, freq) for lbl, src, freq in merged.values())

    segments = []
    for i, raw in enumerate(_require(transcript, "segments", list, "transcript")):
        what = f"segment {i}"
        start = _require(raw, "start", int, what)
        end = _require(raw, "end", int, what)
        text = _require(raw, "transcript", str, what)
        try:
            segments.append(TimeSegment(start, end, text))
        except ValueError as exc:
            raise SchemaError(f"{what}: {exc}") from None
    segments.sort(key=lambda s: s.start)
    for prev, nxt in zip(segments, segments[1:]):
        if nxt.start < prev.end:
            raise OrderError(
                f"segments [{prev.start}, {prev.end}) and [{nxt.start}, {nxt.end}) overlap"
            )

    return VideoRecord(video_id, url, title, language, tuple(segments), entities)


def load_video_bundle(path) -> VideoRecord:
    """Load a single-file video bundle (metadata and segments in one JSON doc)."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: bundle must be a JSON object")
    return load_video_record(doc, doc)
