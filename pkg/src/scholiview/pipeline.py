"""End-to-end orchestration: entities -> bubbles, transcript -> keyphrase
table, serialized as JSON ("scholiview/1") and self-contained HTML.
"""

from __future__ import annotations

import html
import json
import logging
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .embedding import DEFAULT_MAX_VOCAB, EmbeddingTable, embed
from .errors import EmptySummary, OovUnresolvable, SchemaError
from .ingest import VideoRecord
from .keyphrase import KeyphraseResult, Linkage, RankConfig, extract
from .projection import Bubble, bubble_layout, pca_2d
from .textprep import (
    TaggedToken,
    default_lexicon,
    default_suffix_rules,
    load_stopwords,
    parse_tagged,
    tag_fallback,
    tokenize,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = "scholiview/1"

SUPPORTED_LANGUAGES = ("de", "en")

_QUALIFIER_RE = re.compile(r"<[^<>]*>")


@dataclass(frozen=True)
class PipelineConfig:
    embedding_path: str
    language: str = "de"
    r_max: float = 1.0
    max_vocab: int = DEFAULT_MAX_VOCAB
    min_entity_frequency: int = 1
    drop_oov_entities: bool = True
    rank: RankConfig = field(default_factory=RankConfig)

    def __post_init__(self):
        if not self.embedding_path:
            raise ValueError("embedding_path must be non-empty")
        if self.language not in SUPPORTED_LANGUAGES:
            raise ValueError(f"unsupported language {self.language!r}")
        if self.r_max <= 0:
            raise ValueError("r_max must be positive")
        if self.max_vocab < 1:
            raise ValueError("max_vocab must be positive")
        if self.min_entity_frequency < 1:
            raise ValueError("min_entity_frequency must be >= 1")

    def to_mapping(self) -> dict:
        """Flat, ordered echo of every effective parameter."""
        return {
            "language": self.language,
            "alpha": self.rank.alpha,
            "cluster_threshold": self.rank.cluster_threshold,
            "linkage": self.rank.linkage.value,
            "top_k": self.rank.top_k,
            "damping": self.rank.damping,
            "pagerank_tol": self.rank.pagerank_tol,
            "pagerank_max_iters": self.rank.pagerank_max_iters,
            "allowed_tags": sorted(self.rank.allowed_tags),
            "embedding_path": self.embedding_path,
            "max_vocab": self.max_vocab,
            "r_max": self.r_max,
            "min_entity_frequency": self.min_entity_frequency,
            "drop_oov_entities": self.drop_oov_entities,
        }

    @classmethod
    def from_mapping(cls, mapping: Mapping) -> "PipelineConfig":
        rank = RankConfig(
            alpha=mapping["alpha"],
            cluster_threshold=mapping["cluster_threshold"],
            linkage=Linkage(mapping["linkage"]),
            top_k=mapping["top_k"],
            damping=mapping["damping"],
            pagerank_tol=mapping["pagerank_tol"],
            pagerank_max_iters=mapping["pagerank_max_iters"],
            allowed_tags=frozenset(mapping["allowed_tags"]),
        )
        return cls(
            embedding_path=mapping["embedding_path"],
            language=mapping["language"],
            r_max=mapping["r_max"],
            max_vocab=mapping["max_vocab"],
            min_entity_frequency=mapping["min_entity_frequency"],
            drop_oov_entities=mapping["drop_oov_entities"],
            rank=rank,
        )


@dataclass(frozen=True)
class TableRow:
    segment_start: int
    segment_end: int
    keyphrases: tuple[str, ...]


@dataclass(frozen=True, eq=False)
class SummaryVisualization:
    video_id: str
    url: str
    title: str
    bubbles: tuple[Bubble, ...]
    keyphrase_table: tuple[TableRow, ...]
    generator_config: dict


def entity_vector(table: EmbeddingTable, label: str) -> np.ndarray:
    """Embed an entity label: strip ``<...>`` qualifiers, embed each
    remaining word token, return the token mean.

    Tokens that fail to embed are skipped; if every token fails the
    label is :class:`OovUnresolvable`.
    """
    if not label:
        raise ValueError("label must be non-empty")
    stripped = _QUALIFIER_RE.sub(" ", label)
    tokens = [t for t in tokenize(stripped) if any(c.isalnum() for c in t)]
    acc = np.zeros(table.dimension)
    found = 0
    for token in tokens:
        try:
            acc += embed(table, token)
        except OovUnresolvable:
            continue
        found += 1
    if found == 0:
        raise OovUnresolvable(f"label {label!r} has no resolvable token")
    return acc / found


def _tag_with_fallback(record: VideoRecord, language: str) -> list[list[TaggedToken]]:
    lexicon = default_lexicon(language)
    rules = default_suffix_rules(language)
    tagged: list[list[TaggedToken]] = []
    offset = 0
    for segment in record.segments:
        tokens = tokenize(segment.transcript)
        local = tag_fallback(tokens, lexicon, rules)
        tagged.append(
            [TaggedToken(t.surface, t.tag, t.position + offset) for t in local]
        )
        offset += len(tokens)
    return tagged


def parse_tagged_segments(text: str) -> list[list[TaggedToken]]:
    """Parse a pre-tagged transcript file: one slash-format line per
    segment, blank line = silent segment. Token positions are rebased
    to be document-global."""
    segments: list[list[TaggedToken]] = []
    offset = 0
    for line in text.splitlines():
        local = parse_tagged(line)
        segments.append(
            [TaggedToken(t.surface, t.tag, t.position + offset) for t in local]
        )
        offset += len(local)
    return segments


def summarize(
    record: VideoRecord,
    table: EmbeddingTable,
    config: PipelineConfig,
    tagged_segments: Sequence[Sequence[TaggedToken]] | None = None,
) -> SummaryVisualization:
    """Build the full visual summary for one video.

    Entities below ``min_entity_frequency`` are filtered; entities whose
    label cannot be embedded are dropped with a warning (or raise, when
    ``drop_oov_entities`` is off). Pass ``tagged_segments`` for
    externally POS-tagged transcripts; otherwise the bundled fallback
    tagger is used.
    """
    if tagged_segments is not None and len(tagged_segments) != len(record.segments):
        raise SchemaError(
            f"{len(tagged_segments)} tagged segments for {len(record.segments)} transcript segments"
        )
    kept = []
    vectors = []
    for entity in record.entities:
        if entity.frequency < config.min_entity_frequency:
            continue
        try:
            vec = entity_vector(table, entity.label)
        except OovUnresolvable:
            if not config.drop_oov_entities:
                raise
            log.warning("dropping unembeddable entity %r", entity.label)
            continue
        kept.append(entity)
        vectors.append(vec)
    if not kept:
        raise EmptySummary("no entity survived filtering")

    projection = pca_2d(np.vstack(vectors))
    bubbles = bubble_layout(kept, projection.coordinates, r_max=config.r_max)

    if tagged_segments is None:
        tagged_segments = _tag_with_fallback(record, config.language)
    stopwords = load_stopwords(config.language)
    result: KeyphraseResult = extract(tagged_segments, config.rank, stopwords)
    rows = tuple(
        TableRow(
            segment_start=segment.start,
            segment_end=segment.end,
            keyphrases=tuple(surface for surface, _ in ranked),
        )
        for segment, (_, ranked) in zip(record.segments, result.per_segment)
    )
    return SummaryVisualization(
        video_id=record.video_id,
        url=record.url,
        title=record.title,
        bubbles=tuple(bubbles),
        keyphrase_table=rows,
        generator_config=config.to_mapping(),
    )


def _emit_value(value, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, item) in enumerate(value.items()):
            out.append(f'{pad}  {json.dumps(key, ensure_ascii=False)}: ')
            _emit_value(item, indent + 1, out)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(value):
            out.append(pad + "  ")
            _emit_value(item, indent + 1, out)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "]")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        if not np.isfinite(value):
            raise ValueError("non-finite float in output document")
        if value == 0.0:
            value = 0.0  # normalize -0.0
        out.append(f"{value:.6f}")
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    elif value is None:
        out.append("null")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def _document(viz: SummaryVisualization) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "video_id": viz.video_id,
        "url": viz.url,
        "title": viz.title,
        "bubbles": [
            {
                "label": b.label,
                "x": float(b.x),
                "y": float(b.y),
                "radius": float(b.radius),
                "frequency": b.frequency,
                "source": b.source.value,
            }
            for b in viz.bubbles
        ],
        "keyphrase_table": [
            {
                "segment_start": row.segment_start,
                "segment_end": row.segment_end,
                "keyphrases": list(row.keyphrases),
            }
            for row in viz.keyphrase_table
        ],
        "generator_config": dict(viz.generator_config),
    }


def emit_json(viz: SummaryVisualization) -> bytes:
    """Serialize to the "scholiview/1" JSON contract.

    Deterministic bytes: fixed key order, floats at 6 decimal places,
    UTF-8, trailing newline. Re-parsing and re-emitting reproduces the
    same bytes.
    """
    out: list[str] = []
    _emit_value(_document(viz), 0, out)
    out.append("\n")
    return "".join(out).encode("utf-8")


def parse_summary_json(data: bytes) -> dict:
    """Parse an emitted document back into plain Python structures."""
    doc = json.loads(data.decode("utf-8"))
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA_VERSION:
        raise SchemaError(f"expected schema {SCHEMA_VERSION!r}")
    return doc


def reemit_json(doc: dict) -> bytes:
    """Emit an already-parsed document (fixpoint with :func:`emit_json`)."""
    out: list[str] = []
    _emit_value(doc, 0, out)
    out.append("\n")
    return "".join(out).encode("utf-8")


def _viewer_script() -> str:
    assets = resources.files("scholiview").joinpath("assets")
    bundled = Path(str(assets.joinpath("viewer.js")))
    if bundled.is_file():
        return bundled.read_text(encoding="utf-8")
    return Path(str(assets.joinpath("fallback_viewer.js"))).read_text(encoding="utf-8")


def _format_time(seconds: int) -> str:
    return f"{seconds // 60:02d}:{seconds % 60:02d}"


def _static_table(viz: SummaryVisualization) -> str:
    has_any = any(row.keyphrases for row in viz.keyphrase_table)
    if not has_any:
        return '<p class="placeholder">no keyphrases</p>'
    parts = ["<table><thead><tr><th>segment</th><th>keyphrases</th></tr></thead><tbody>"]
    for row in viz.keyphrase_table:
        span = f"{_format_time(row.segment_start)}&ndash;{_format_time(row.segment_end)}"
        phrases = html.escape(", ".join(row.keyphrases))
        parts.append(f"<tr><td>{span}</td><td>{phrases}</td></tr>")
    parts.append("</tbody></table>")
    return "".join(parts)


_HTML_TEMPLATE = """<!DOCTYPE html>
<html lang="{language}">
<head>
<meta charset="utf-8">
<title>{title} &middot; scholiview</title>
<style>
body {{ font-family: system-ui, sans-serif; margin: 1.5rem; color: #222; }}
header h1 {{ margin-bottom: 0.2rem; }}
header .meta {{ color: #666; font-size: 0.9rem; }}
#diagram {{ position: relative; border: 1px solid #ddd; border-radius: 6px; margin: 1rem 0; }}
#scholiview-canvas {{ display: block; width: 100%; height: auto; }}
#scholiview-toolbar {{ position: absolute; top: 8px; right: 8px; display: flex; gap: 4px; }}
#scholiview-toolbar button {{ cursor: pointer; border: 1px solid #bbb; background: #fff; border-radius: 4px; padding: 2px 8px; }}
#scholiview-table table {{ border-collapse: collapse; width: 100%; }}
#scholiview-table td, #scholiview-table th {{ border: 1px solid #ddd; padding: 4px 8px; text-align: left; vertical-align: top; }}
#scholiview-table tr.highlight {{ background: #fff3c4; }}
.placeholder {{ color: #888; font-style: italic; }}
#scholiview-error {{ color: #a00; font-weight: bold; }}
</style>
</head>
<body>
<header>
<h1>{title}</h1>
<p class="meta"><a href="{url}">{url}</a></p>
</header>
<main>
<section id="diagram">
<svg id="scholiview-canvas" viewBox="0 0 800 600" xmlns="http://www.w3.org/2000/svg"></svg>
<div id="scholiview-toolbar"></div>
</section>
<section id="scholiview-table">
{table}
</section>
</main>
<script type="application/json" id="scholiview-data">{json}</script>
<script>
{script}
</script>
</body>
</html>
"""


def emit_html(viz: SummaryVisualization) -> bytes:
    """Self-contained HTML page: embedded JSON document plus viewer script.

    Opens offline; the embedded JSON equals :func:`emit_json` output
    byte for byte.
    """
    json_text = emit_json(viz).decode("utf-8")
    if "</script" in json_text.lower():
        raise ValueError("document content may not contain '</script'")
    page = _HTML_TEMPLATE.format(
        language=html.escape(viz.generator_config.get("language", "en")),
        title=html.escape(viz.title),
        url=html.escape(viz.url, quote=True),
        table=_static_table(viz),
        json=json_text,
        script=_viewer_script(),
    )
    return page.encode("utf-8")
