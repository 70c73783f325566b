"""Command-line interface: query videos from RDF metadata, summarize a
single video, or batch-process a manifest.

Exit codes: 0 success, 2 input format error, 3 empty result, 64 usage.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .embedding import load_vectors
from .errors import EmptySummary, ScholiviewError
from .ingest import load_video_bundle, parse_ntriples, query_videos_with_asr
from .keyphrase import RankConfig
from .pipeline import (
    PipelineConfig,
    emit_html,
    emit_json,
    parse_tagged_segments,
    summarize,
)

log = logging.getLogger("scholiview")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_EMPTY = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="scholiview", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    query = sub.add_parser("query", help="list videos with ASR annotations from RDF metadata")
    query.add_argument("--rdf", required=True, help="N-Triples metadata file")
    query.add_argument("--asr-iri", required=True, help="IRI of the ASR annotation tool")

    summ = sub.add_parser("summarize", help="summarize one video bundle")
    _add_summarize_args(summ, single=True)

    batch = sub.add_parser("batch", help="summarize every video in a manifest")
    batch.add_argument("--manifest", required=True,
                       help="file with lines: video_json_path<TAB>tagged_txt_path")
    batch.add_argument("--jobs", type=int, default=1, help="parallel workers")
    _add_summarize_args(batch, single=False)

    return parser


def _add_summarize_args(p: argparse.ArgumentParser, single: bool) -> None:
    if single:
        p.add_argument("--video", required=True, help="video bundle JSON file")
        p.add_argument("--tagged", required=True, help="pre-tagged transcript (one line per segment)")
    p.add_argument("--vectors", required=True, help="textual word-vector file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--alpha", type=float, default=1.0, help="weight adjustment strength")
    p.add_argument("--threshold", type=float, default=0.4, help="minimum clustering similarity")
    p.add_argument("--topk", type=int, default=20, help="keyphrases per segment")
    p.add_argument("--lang", default="de", choices=["de", "en"], help="transcript language")
    p.add_argument("--rmax", type=float, default=1.0, help="radius of the most frequent entity")
    p.add_argument("--max-vocab", type=int, default=200_000, help="vector vocabulary cap")
    p.add_argument("--format", default="json", choices=["json", "html", "both"],
                   help="output format(s)")


def _pipeline_config(args) -> PipelineConfig:
    return PipelineConfig(
        embedding_path=args.vectors,
        language=args.lang,
        r_max=args.rmax,
        max_vocab=args.max_vocab,
        rank=RankConfig(
            alpha=args.alpha,
            cluster_threshold=args.threshold,
            top_k=args.topk,
        ),
    )


def cmd_query(args) -> int:
    try:
        store = parse_ntriples(Path(args.rdf).read_bytes())
    except OSError as exc:
        print(f"scholiview: cannot read {args.rdf}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ScholiviewError as exc:
        print(f"scholiview: {args.rdf}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for url in sorted(query_videos_with_asr(store, args.asr_iri)):
        print(url)
    return EXIT_OK


def _summarize_one(video_path: str, tagged_path: str, table, config: PipelineConfig,
                   out_dir: Path, fmt: str):
    record = load_video_bundle(video_path)
    tagged = parse_tagged_segments(Path(tagged_path).read_text(encoding="utf-8"))
    viz = summarize(record, table, config, tagged_segments=tagged)
    written = []
    if fmt in ("json", "both"):
        path = out_dir / f"{record.video_id}.json"
        path.write_bytes(emit_json(viz))
        written.append(path)
    if fmt in ("html", "both"):
        path = out_dir / f"{record.video_id}.html"
        path.write_bytes(emit_html(viz))
        written.append(path)
    return record, viz, written


def cmd_summarize(args) -> int:
    config = _pipeline_config(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        table = load_vectors(args.vectors, max_vocab=args.max_vocab)
        record, viz, written = _summarize_one(
            args.video, args.tagged, table, config, out_dir, args.format
        )
    except EmptySummary as exc:
        print(f"scholiview: empty summary: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (OSError, ScholiviewError) as exc:
        print(f"scholiview: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(
        f"{record.video_id}: {len(record.entities)} entities, "
        f"{len(viz.bubbles)} bubbles, {len(record.segments)} segments -> "
        + ", ".join(str(p) for p in written)
    )
    return EXIT_OK


def _read_manifest(path: str) -> list[tuple[str, str]]:
    pairs = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ScholiviewError(
                f"{path}:{lineno}: expected video_json_path<TAB>tagged_txt_path"
            )
        pairs.append((parts[0], parts[1]))
    return pairs


def cmd_batch(args) -> int:
    config = _pipeline_config(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        pairs = _read_manifest(args.manifest)
        table = load_vectors(args.vectors, max_vocab=args.max_vocab)
    except (OSError, ScholiviewError) as exc:
        print(f"scholiview: {exc}", file=sys.stderr)
        return EXIT_INPUT

    def job(pair: tuple[str, str]):
        video_path, tagged_path = pair
        try:
            return _summarize_one(video_path, tagged_path, table, config, out_dir, args.format)
        except (OSError, ScholiviewError) as exc:
            log.warning("skipping %s: %s", video_path, exc)
            return None

    jobs = max(1, args.jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(job, pairs))
    successes = [r for r in results if r is not None]
    print(f"{len(successes)}/{len(pairs)} videos summarized -> {out_dir}")
    return EXIT_OK if successes else EXIT_EMPTY


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    handlers = {"query": cmd_query, "summarize": cmd_summarize, "batch": cmd_batch}
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
