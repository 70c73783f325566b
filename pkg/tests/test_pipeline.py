"""Entity embedding, summarization, and the JSON/HTML emitters,
including the frozen end-to-end golden document."""

import json
import math
import re

import numpy as np
import pytest

from scholiview.embedding import char_ngrams, load_vectors
from scholiview.errors import EmptySummary, OovUnresolvable, SchemaError
from scholiview.ingest import load_video_bundle
from scholiview.keyphrase import RankConfig
from scholiview.pipeline import (
    PipelineConfig,
    SummaryVisualization,
    TableRow,
    emit_html,
    emit_json,
    entity_vector,
    parse_summary_json,
    parse_tagged_segments,
    reemit_json,
    summarize,
)
from scholiview.projection import Bubble
from scholiview.ingest import EntitySource
from scholiview.textprep import load_stopwords

from keyphrase_oracles import hac_oracle
from test_keyphrase import oracle_extract, tag_segments


@pytest.fixture(scope="module")
def toy_table(fixtures_dir_module):
    return load_vectors(fixtures_dir_module / "toy_vectors.vec")


@pytest.fixture(scope="module")
def fixtures_dir_module():
    from conftest import FIXTURES

    return FIXTURES


@pytest.fixture(scope="module")
def demo_record(fixtures_dir_module):
    return load_video_bundle(fixtures_dir_module / "video_demo.json")


@pytest.fixture(scope="module")
def demo_tagged(fixtures_dir_module):
    text = (fixtures_dir_module / "video_demo_tagged.txt").read_text(encoding="utf-8")
    return parse_tagged_segments(text)


@pytest.fixture(scope="module")
def demo_config():
    return PipelineConfig(embedding_path="toy_vectors.vec")


@pytest.fixture(scope="module")
def demo_viz(demo_record, toy_table, demo_config, demo_tagged):
    return summarize(demo_record, toy_table, demo_config, tagged_segments=demo_tagged)


class TestEntityVector:
    def test_single_in_vocab_token(self, toy_table):
        vec = entity_vector(toy_table, "Laufzeit")
        np.testing.assert_array_equal(vec, toy_table.vocab["laufzeit"])

    def test_bracketed_qualifier_stripped(self, toy_table):
        vec = entity_vector(toy_table, "Aussage <Mathematik>")
        np.testing.assert_array_equal(vec, toy_table.vocab["aussage"])

    def test_two_token_label_is_token_mean(self, toy_table):
        vec = entity_vector(toy_table, "Matrix Vektor")
        expected = (toy_table.vocab["matrix"] + toy_table.vocab["vektor"]) / 2
        np.testing.assert_allclose(vec, expected, rtol=0, atol=1e-15)

    def test_unresolvable_token_skipped(self, toy_table):
        vec = entity_vector(toy_table, "zzzz Matrix")
        np.testing.assert_array_equal(vec, toy_table.vocab["matrix"])

    def test_fully_unresolvable_label(self, toy_table):
        with pytest.raises(OovUnresolvable):
            entity_vector(toy_table, "zzzz")


class TestSummarize:
    def test_no_entities_is_empty_summary(self, toy_table, demo_record):
        bare = type(demo_record)(
            demo_record.video_id, demo_record.url, demo_record.title,
            demo_record.language, demo_record.segments, (),
        )
        with pytest.raises(EmptySummary):
            summarize(bare, toy_table, PipelineConfig(embedding_path="x"))

    def test_every_resolvable_entity_becomes_a_bubble(self, demo_viz, demo_record):
        assert len(demo_viz.bubbles) == len(demo_record.entities)
        assert [b.label for b in demo_viz.bubbles] == [
            e.label for e in demo_record.entities
        ]

    def test_largest_bubble_is_most_frequent_entity(self, demo_viz, demo_record):
        biggest = max(demo_viz.bubbles, key=lambda b: b.radius)
        most_frequent = max(demo_record.entities, key=lambda e: e.frequency)
        assert biggest.label == most_frequent.label

    def test_unembeddable_entities_dropped_with_warning(
        self, toy_table, demo_record, demo_config, demo_tagged, caplog
    ):
        import dataclasses

        from scholiview.ingest import KeyEntity

        noisy = dataclasses.replace(
            demo_record,
            entities=demo_record.entities + (KeyEntity("zzzz", EntitySource.OCR, 7),),
        )
        with caplog.at_level("WARNING"):
            viz = summarize(noisy, toy_table, demo_config, tagged_segments=demo_tagged)
        assert len(viz.bubbles) == len(demo_record.entities)
        assert "zzzz" in caplog.text

    def test_unembeddable_entity_raises_when_dropping_disabled(
        self, toy_table, demo_record, demo_tagged
    ):
        import dataclasses

        from scholiview.ingest import KeyEntity

        noisy = dataclasses.replace(
            demo_record,
            entities=(KeyEntity("zzzz", EntitySource.OCR, 7),) + demo_record.entities,
        )
        config = PipelineConfig(embedding_path="x", drop_oov_entities=False)
        with pytest.raises(OovUnresolvable):
            summarize(noisy, toy_table, config, tagged_segments=demo_tagged)

    def test_min_frequency_filter(self, toy_table, demo_record, demo_tagged):
        config = PipelineConfig(embedding_path="x", min_entity_frequency=3)
        viz = summarize(demo_record, toy_table, config, tagged_segments=demo_tagged)
        assert all(b.frequency >= 3 for b in viz.bubbles)
        assert len(viz.bubbles) == 5

    def test_tagged_segment_count_must_match(self, toy_table, demo_record, demo_tagged):
        with pytest.raises(SchemaError):
            summarize(
                demo_record, toy_table,
                PipelineConfig(embedding_path="x"),
                tagged_segments=demo_tagged[:2],
            )

    def test_fallback_tagger_used_without_tagged_input(
        self, toy_table, demo_record, demo_config
    ):
        viz = summarize(demo_record, toy_table, demo_config)
        assert len(viz.keyphrase_table) == 3
        assert any(row.keyphrases for row in viz.keyphrase_table)

    def test_deterministic(self, toy_table, demo_record, demo_config, demo_tagged):
        a = summarize(demo_record, toy_table, demo_config, tagged_segments=demo_tagged)
        b = summarize(demo_record, toy_table, demo_config, tagged_segments=demo_tagged)
        assert emit_json(a) == emit_json(b)

    def test_config_echo_round_trips(self, demo_viz, demo_config):
        assert PipelineConfig.from_mapping(demo_viz.generator_config) == demo_config


class TestGolden:
    def test_byte_identical_golden_json(self, demo_viz, fixtures_dir_module):
        golden = (fixtures_dir_module / "golden_demo.json").read_bytes()
        assert emit_json(demo_viz) == golden

    def test_golden_bubbles_match_pca_oracle(self, toy_table, fixtures_dir_module):
        """Re-derive the golden's coordinates from an independent chain:
        brute-force embedding, dense eigendecomposition, affine rescale."""
        golden = json.loads((fixtures_dir_module / "golden_demo.json").read_bytes())
        entities = json.loads(
            (fixtures_dir_module / "video_demo.json").read_text(encoding="utf-8")
        )["entities"]

        vocab = toy_table.vocab

        def embed_oracle(word):
            if word in vocab:
                return vocab[word]
            if word.lower() in vocab:
                return vocab[word.lower()]
            sums, counts = {}, {}
            for w in vocab:
                for gram in set(char_ngrams(w)):
                    sums[gram] = sums.get(gram, np.zeros(toy_table.dimension)) + vocab[w]
                    counts[gram] = counts.get(gram, 0) + 1
            hits = [sums[g] / counts[g] for g in char_ngrams(word) if g in sums]
            return np.mean(hits, axis=0)

        def label_vec(label):
            tokens = [
                t
                for t in re.sub(r"<[^<>]*>", " ", label).split()
                if any(c.isalnum() for c in t)
            ]
            return np.mean([embed_oracle(t) for t in tokens], axis=0)

        x = np.vstack([label_vec(e["label"]) for e in entities])
        centered = x - x.mean(axis=0)
        _, eigvecs = np.linalg.eigh(centered.T @ centered / (x.shape[0] - 1))
        comps = eigvecs[:, [-1, -2]].T.copy()
        for k in range(2):
            j = int(np.argmax(np.abs(comps[k])))
            if comps[k, j] < 0:
                comps[k] = -comps[k]
        coords = centered @ comps.T
        xmin, ymin = coords.min(axis=0)
        xmax, ymax = coords.max(axis=0)
        width, height = xmax - xmin, ymax - ymin
        scale = 1.0 / max(width, height)
        freq_max = max(e["frequency"] for e in entities)
        for i, bubble in enumerate(golden["bubbles"]):
            ox = (coords[i, 0] - xmin) * scale + (1 - width * scale) / 2
            oy = (coords[i, 1] - ymin) * scale + (1 - height * scale) / 2
            assert bubble["x"] == pytest.approx(ox, abs=5e-7)
            assert bubble["y"] == pytest.approx(oy, abs=5e-7)
            expected_radius = math.sqrt(entities[i]["frequency"] / freq_max)
            assert bubble["radius"] == pytest.approx(expected_radius, abs=5e-7)

    def test_golden_keyphrases_match_oracle_trace(self, fixtures_dir_module):
        golden = json.loads((fixtures_dir_module / "golden_demo.json").read_bytes())
        lines = (
            (fixtures_dir_module / "video_demo_tagged.txt")
            .read_text(encoding="utf-8")
            .splitlines()
        )
        segments = tag_segments(*lines)
        result = oracle_extract(segments, RankConfig(), load_stopwords("de"))
        expected = [[surface for surface, _ in row] for _, row in result.per_segment]
        assert [r["keyphrases"] for r in golden["keyphrase_table"]] == expected

    def test_golden_topics_match_hac_oracle(self, fixtures_dir_module):
        from scholiview.keyphrase import cluster_topics, select_candidates

        lines = (
            (fixtures_dir_module / "video_demo_tagged.txt")
            .read_text(encoding="utf-8")
            .splitlines()
        )
        segments = tag_segments(*lines)
        cands = select_candidates(segments, RankConfig(), load_stopwords("de"))
        got = [t.members for t in cluster_topics(cands, RankConfig())]
        expected = hac_oracle([frozenset(c.stems) for c in cands], 0.4)
        assert got == expected


def _tiny_viz(keyphrases=("Laufzeit",)):
    rows = (
        (TableRow(0, 60, tuple(keyphrases)),) if keyphrases is not None else ()
    )
    return SummaryVisualization(
        video_id="v1",
        url="https://example.org/v1",
        title="Tiny",
        bubbles=(
            Bubble("Laufzeit", 0.5, 0.5, 1.0, 3, EntitySource.ASR),
        ),
        keyphrase_table=rows,
        generator_config=PipelineConfig(embedding_path="vec.txt").to_mapping(),
    )


class TestEmitJson:
    def test_fixpoint_under_reparse(self, demo_viz):
        first = emit_json(demo_viz)
        assert reemit_json(parse_summary_json(first)) == first

    def test_empty_keyphrase_table(self):
        viz = _tiny_viz(keyphrases=None)
        assert b'"keyphrase_table": []' in emit_json(viz)

    def test_schema_field_first(self):
        data = emit_json(_tiny_viz())
        assert data.startswith(b'{\n  "schema": "scholiview/1"')

    def test_floats_have_six_decimals(self):
        data = emit_json(_tiny_viz()).decode()
        for match in re.finditer(r'"(?:x|y|radius|alpha)": ([-0-9.]+)', data):
            whole, frac = match.group(1).split(".")
            assert len(frac) == 6

    def test_schema_mismatch_rejected_on_parse(self):
        with pytest.raises(SchemaError):
            parse_summary_json(b'{"schema": "scholiview/2"}')


class TestEmitHtml:
    def test_embeds_exactly_one_json_document_equal_to_emit_json(self, demo_viz):
        html_bytes = emit_html(demo_viz)
        text = html_bytes.decode("utf-8")
        blocks = re.findall(
            r'<script type="application/json" id="scholiview-data">(.*?)</script>',
            text,
            re.DOTALL,
        )
        assert len(blocks) == 1
        assert blocks[0].encode("utf-8") == emit_json(demo_viz)

    @staticmethod
    def _table_section(data: bytes) -> str:
        match = re.search(
            r'<section id="scholiview-table">(.*?)</section>',
            data.decode("utf-8"),
            re.DOTALL,
        )
        assert match is not None
        return match.group(1)

    def test_zero_keyphrase_placeholder(self):
        empty = self._table_section(emit_html(_tiny_viz(keyphrases=None)))
        assert "no keyphrases" in empty
        non_empty = self._table_section(emit_html(_tiny_viz()))
        assert "no keyphrases" not in non_empty
        assert "Laufzeit" in non_empty

    def test_has_svg_mount_point(self, demo_viz):
        text = emit_html(demo_viz).decode("utf-8")
        assert text.count('<svg id="scholiview-canvas"') == 1

    def test_title_escaped(self):
        viz = _tiny_viz()
        object.__setattr__(viz, "title", "a <b> & c")
        text = emit_html(viz).decode("utf-8")
        assert "<h1>a &lt;b&gt; &amp; c</h1>" in text
