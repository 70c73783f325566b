"""Graph-based keyphrase extraction over POS-tagged transcripts.

Pipeline: candidate selection by POS pattern, agglomerative topic
clustering over stem overlap, multipartite graph construction from
positional co-occurrence, a first-occurrence weight boost per topic,
and PageRank scoring with per-segment top-k selection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .errors import DegenerateGraph
from .textprep import UPOS_TAGS, StopwordList, TaggedToken, is_stopword, stem

MAX_RUN_TOKENS = 5

# Width of the float band inside which cluster merge decisions are
# re-checked with exact rational arithmetic (Jaccard values and their
# averages are rationals, so ties are decidable exactly).
_TIE_BAND = 1e-9


class Linkage(Enum):
    AVERAGE = "average"


@dataclass(frozen=True)
class Occurrence:
    first_token_position: int
    segment_index: int

    def __post_init__(self):
        if self.first_token_position < 1:
            raise ValueError("positions are 1-based")


@dataclass(frozen=True)
class Candidate:
    surface_form: str
    stems: tuple[str, ...]
    occurrences: tuple[Occurrence, ...]

    def __post_init__(self):
        if not self.occurrences:
            raise ValueError("candidate needs at least one occurrence")
        if len(self.stems) != len(self.surface_form.split(" ")):
            raise ValueError("stems must align with surface tokens")

    @property
    def first_position(self) -> int:
        return self.occurrences[0].first_token_position


@dataclass(frozen=True)
class Topic:
    members: tuple[int, ...]
    representative: int

    def __post_init__(self):
        if not self.members:
            raise ValueError("topic needs at least one member")
        if len(set(self.members)) != len(self.members):
            raise ValueError("topic members must be distinct")
        if self.representative not in self.members:
            raise ValueError("representative must be a member")


class WeightedDigraph:
    """Directed graph with non-negative edge weights and no self-edges."""

    def __init__(self, nodes: Sequence[int] = (), edges: Mapping[tuple[int, int], float] | None = None):
        self.nodes: set[int] = set(nodes)
        self.edges: dict[tuple[int, int], float] = {}
        if edges:
            for (u, v), w in edges.items():
                self.add_edge(u, v, w)

    def add_edge(self, u: int, v: int, weight: float) -> None:
        if u == v:
            raise ValueError("self-edges are not allowed")
        if weight < 0:
            raise ValueError("edge weights must be non-negative")
        self.nodes.add(u)
        self.nodes.add(v)
        self.edges[(u, v)] = weight

    def copy(self) -> "WeightedDigraph":
        clone = WeightedDigraph()
        clone.nodes = set(self.nodes)
        clone.edges = dict(self.edges)
        return clone


@dataclass(frozen=True)
class RankConfig:
    alpha: float = 1.0
    cluster_threshold: float = 0.4
    linkage: Linkage = Linkage.AVERAGE
    top_k: int = 20
    damping: float = 0.85
    pagerank_tol: float = 1e-6
    pagerank_max_iters: int = 100
    allowed_tags: frozenset[str] = frozenset({"NOUN", "ADJ", "PROPN", "VERB"})

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if not 0 < self.cluster_threshold <= 1:
            raise ValueError("cluster_threshold must be in (0, 1]")
        if not isinstance(self.linkage, Linkage):
            raise ValueError("linkage must be a Linkage value")
        if self.top_k < 1:
            raise ValueError("top_k must be positive")
        if not 0 < self.damping < 1:
            raise ValueError("damping must be in (0, 1)")
        if self.pagerank_tol <= 0:
            raise ValueError("pagerank_tol must be positive")
        if self.pagerank_max_iters < 1:
            raise ValueError("pagerank_max_iters must be positive")
        if not self.allowed_tags or not self.allowed_tags <= UPOS_TAGS:
            raise ValueError("allowed_tags must be a non-empty subset of the tag set")


@dataclass(frozen=True)
class KeyphraseResult:
    per_segment: tuple[tuple[int, tuple[tuple[str, float], ...]], ...]


def select_candidates(
    segments: Sequence[Sequence[TaggedToken]],
    config: RankConfig,
    stopwords: StopwordList,
) -> list[Candidate]:
    """Candidate phrases: maximal runs of allowed-tag, non-stopword tokens.

    Runs longer than 5 tokens keep their first 5. Candidates with the
    same stem sequence merge into one with multiple occurrences; the
    first-seen surface form is kept. Token positions must be
    document-global across segments.
    """
    language = stopwords.language
    registry: dict[tuple[str, ...], tuple[str, list[Occurrence]]] = {}

    def flush(run: list[TaggedToken], segment_index: int) -> None:
        if not run:
            return
        kept = run[:MAX_RUN_TOKENS]
        stems = tuple(stem(t.surface, language) for t in kept)
        occurrence = Occurrence(kept[0].position, segment_index)
        if stems in registry:
            registry[stems][1].append(occurrence)
        else:
            registry[stems] = (" ".join(t.surface for t in kept), [occurrence])

    for segment_index, segment in enumerate(segments):
        run: list[TaggedToken] = []
        for token in segment:
            if token.tag in config.allowed_tags and not is_stopword(token.surface, stopwords):
                run.append(token)
            else:
                flush(run, segment_index)
                run = []
        flush(run, segment_index)

    return [
        Candidate(surface, stems, tuple(occs))
        for stems, (surface, occs) in registry.items()
    ]


def topic_similarity(a: Candidate, b: Candidate) -> float:
    """Jaccard index of the candidates' stem sets."""
    sa, sb = set(a.stems), set(b.stems)
    return len(sa & sb) / len(sa | sb)


def _exact_average(
    members_a: Sequence[int],
    members_b: Sequence[int],
    inter: np.ndarray,
    union: np.ndarray,
) -> Fraction:
    total = Fraction(0)
    for a in members_a:
        for b in members_b:
            total += Fraction(int(inter[a, b]), int(union[a, b]))
    return total / (len(members_a) * len(members_b))


def cluster_topics(candidates: Sequence[Candidate], config: RankConfig) -> list[Topic]:
    """Average-linkage agglomerative clustering over stem-set Jaccard.

    Merging stops when the best inter-cluster average similarity falls
    below ``cluster_threshold``; ties go to the lexicographically
    smallest (cluster-id, cluster-id) pair, where a merged cluster
    keeps the smaller id. Because Jaccard averages are rationals,
    near-tied merge decisions are settled in exact arithmetic.
    """
    n = len(candidates)
    if n == 0:
        return []
    stem_sets = [set(c.stems) for c in candidates]
    inter = np.zeros((n, n), dtype=np.int64)
    union = np.ones((n, n), dtype=np.int64)
    sims = np.full((n, n), -np.inf)
    for i in range(n):
        for j in range(i + 1, n):
            ii = len(stem_sets[i] & stem_sets[j])
            uu = len(stem_sets[i] | stem_sets[j])
            inter[i, j] = inter[j, i] = ii
            union[i, j] = union[j, i] = uu
            sims[i, j] = ii / uu

    members: dict[int, list[int]] = {i: [i] for i in range(n)}
    sizes = {i: 1 for i in range(n)}
    threshold_exact = Fraction(str(config.cluster_threshold))
    threshold_float = config.cluster_threshold

    while len(members) > 1:
        flat = int(np.argmax(sims))
        i, j = divmod(flat, n)
        best_float = sims[i, j]
        if best_float < threshold_float - _TIE_BAND:
            break
        near = np.argwhere(sims >= best_float - _TIE_BAND)
        best_pair: tuple[int, int] | None = None
        best_exact: Fraction | None = None
        for a, b in near:  # argwhere yields row-major order = lexicographic
            exact = _exact_average(members[a], members[b], inter, union)
            if best_exact is None or exact > best_exact:
                best_pair, best_exact = (int(a), int(b)), exact
        assert best_pair is not None and best_exact is not None
        if best_exact < threshold_exact:
            break
        i, j = best_pair
        # Lance-Williams update keeps the float matrix equal to the
        # average of the original pairwise similarities.
        si, sj = sizes[i], sizes[j]
        for k in members:
            if k in (i, j):
                continue
            a, b = (i, k) if i < k else (k, i)
            c, d = (j, k) if j < k else (k, j)
            merged = (si * sims[a, b] + sj * sims[c, d]) / (si + sj)
            sims[a, b] = merged
        sims[j, :] = -np.inf
        sims[:, j] = -np.inf
        members[i].extend(members[j])
        del members[j]
        sizes[i] = si + sj

    topics = []
    for cluster_id in sorted(members):
        group = sorted(members[cluster_id])
        representative = min(
            group, key=lambda c: (candidates[c].first_position, c)
        )
        topics.append(Topic(members=tuple(group), representative=representative))
    return topics


def build_graph(candidates: Sequence[Candidate], topics: Sequence[Topic]) -> WeightedDigraph:
    """Complete multipartite co-occurrence graph between topics.

    Every cross-topic candidate pair is connected both ways with weight
    ``sum over occurrence pairs of 1 / |p - q|`` on first-token
    positions. Raises :class:`DegenerateGraph` for fewer than 2 topics.
    """
    if len(topics) < 2:
        raise DegenerateGraph(f"{len(topics)} topic(s): no cross-topic edges possible")
    n = len(candidates)
    topic_of = np.zeros(n, dtype=np.int64)
    for t_index, topic in enumerate(topics):
        for m in topic.members:
            topic_of[m] = t_index
    positions = []
    offsets = np.zeros(n + 1, dtype=np.int64)
    for i, cand in enumerate(candidates):
        positions.extend(o.first_token_position for o in cand.occurrences)
        offsets[i + 1] = len(positions)
    weights = kernels.pairwise_inverse_distance_weights(
        np.asarray(positions, dtype=np.int64), offsets, topic_of
    )
    graph = WeightedDigraph(nodes=range(n))
    for i in range(n):
        for j in range(n):
            if i != j and weights[i, j] > 0.0:
                graph.add_edge(i, j, float(weights[i, j]))
    return graph


def adjust_weights(
    graph: WeightedDigraph,
    topics: Sequence[Topic],
    candidates: Sequence[Candidate],
    alpha: float,
) -> WeightedDigraph:
    """Boost edges into each topic's first-occurring candidate.

    For a topic with representative c1 at first position p1, every
    existing edge (cj -> c1) from outside the topic gains
    ``alpha * e^(1/p1) * sum of w(cj -> ck)`` over the topic's other
    members ck. Single-member topics and alpha = 0 leave the graph
    unchanged.
    """
    adjusted = graph.copy()
    for topic in topics:
        if len(topic.members) < 2:
            continue
        rep = topic.representative
        p1 = candidates[rep].first_position
        boost = alpha * math.exp(1.0 / p1)
        others = sorted(m for m in topic.members if m != rep)
        member_set = set(topic.members)
        for j in sorted(graph.nodes):
            if j in member_set or (j, rep) not in graph.edges:
                continue
            incoming_sum = 0.0
            for k in others:
                incoming_sum += graph.edges.get((j, k), 0.0)
            adjusted.edges[(j, rep)] = graph.edges[(j, rep)] + boost * incoming_sum
    return adjusted


def rank(graph: WeightedDigraph, config: RankConfig) -> dict[int, float]:
    """Weighted PageRank scores, summing to 1, keyed by node id.

    Node ids are processed in sorted order, so scores are independent
    of node and edge insertion order.
    """
    nodes = sorted(graph.nodes)
    if not nodes:
        return {}
    index = {node: i for i, node in enumerate(nodes)}
    w = np.zeros((len(nodes), len(nodes)))
    for (u, v), weight in graph.edges.items():
        w[index[u], index[v]] = weight
    scores = kernels.pagerank_dense(
        w, config.damping, config.pagerank_tol, config.pagerank_max_iters
    )
    return {node: float(scores[i]) for node, i in index.items()}


def top_keyphrases(
    scores: Mapping[int, float],
    candidates: Sequence[Candidate],
    config: RankConfig,
    segment_count: int | None = None,
) -> KeyphraseResult:
    """Per-segment ranked keyphrases, at most ``top_k`` each.

    A candidate appears in every segment it occurs in. Order: score
    descending, then earlier first occurrence, then surface form.
    """
    by_segment: dict[int, set[int]] = {}
    for i, cand in enumerate(candidates):
        for occ in cand.occurrences:
            by_segment.setdefault(occ.segment_index, set()).add(i)
    if segment_count is None:
        segment_count = max(by_segment, default=-1) + 1
    rows = []
    for seg in range(segment_count):
        ids = sorted(
            by_segment.get(seg, ()),
            key=lambda i: (-scores[i], candidates[i].first_position, candidates[i].surface_form),
        )
        ranked = tuple(
            (candidates[i].surface_form, scores[i]) for i in ids[: config.top_k]
        )
        rows.append((seg, ranked))
    return KeyphraseResult(per_segment=tuple(rows))


def extract(
    segments: Sequence[Sequence[TaggedToken]],
    config: RankConfig,
    stopwords: StopwordList,
) -> KeyphraseResult:
    """Full extraction over a tagged document (list of tagged segments).

    When all candidates fall into a single topic the multipartite graph
    has no edges; ranking then falls back to normalized occurrence
    counts.
    """
    candidates = select_candidates(segments, config, stopwords)
    segment_count = len(segments)
    if not candidates:
        return KeyphraseResult(tuple((i, ()) for i in range(segment_count)))
    topics = cluster_topics(candidates, config)
    try:
        graph = build_graph(candidates, topics)
    except DegenerateGraph:
        total = sum(len(c.occurrences) for c in candidates)
        scores = {i: len(c.occurrences) / total for i, c in enumerate(candidates)}
    else:
        graph = adjust_weights(graph, topics, candidates, config.alpha)
        scores = rank(graph, config)
    return top_keyphrases(scores, candidates, config, segment_count=segment_count)
