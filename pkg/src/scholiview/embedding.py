"""Word vectors: textual vector-file loading, lookups, and tri-gram
composition for out-of-vocabulary words.

Unknown words are embedded as the mean of precomputed tri-gram
centroids, so misspellings and German compounds still land near their
neighbors instead of failing outright.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import IO, Union

import numpy as np

from . import kernels
from .errors import DimensionMismatch, FormatError, OovUnresolvable, ZeroVector

DEFAULT_MAX_VOCAB = 200_000


def char_ngrams(word: str, n: int = 3) -> list[str]:
    """Character n-grams of the word wrapped in ``<`` and ``>`` markers.

    Emits every contiguous length-``n`` substring in order, duplicates
    retained; empty when the wrapped word is shorter than ``n``.
    """
    if not word:
        raise ValueError("word must be non-empty")
    if n < 2:
        raise ValueError("n must be >= 2")
    wrapped = f"<{word}>"
    return [wrapped[i : i + n] for i in range(len(wrapped) - n + 1)]


class EmbeddingTable:
    """Immutable word -> vector map with a tri-gram centroid index.

    ``trigram_centroids[g]`` is the arithmetic mean of the vectors of
    all vocabulary words whose tri-gram set contains ``g``.
    """

    def __init__(self, dimension: int, vocab: dict[str, np.ndarray]):
        self.dimension = dimension
        self.vocab = vocab
        for vec in vocab.values():
            vec.setflags(write=False)
        self.trigram_centroids = self._build_centroids()

    def _build_centroids(self) -> dict[str, np.ndarray]:
        if not self.vocab:
            return {}
        matrix = np.ascontiguousarray(np.vstack(list(self.vocab.values())))
        members: dict[str, list[int]] = {}
        for row, word in enumerate(self.vocab):
            for gram in dict.fromkeys(char_ngrams(word)):
                members.setdefault(gram, []).append(row)
        grams = list(members)
        member_rows = np.fromiter(
            (r for g in grams for r in members[g]), dtype=np.int64,
            count=sum(len(members[g]) for g in grams),
        )
        offsets = np.zeros(len(grams) + 1, dtype=np.int64)
        np.cumsum([len(members[g]) for g in grams], out=offsets[1:])
        means = kernels.grouped_row_means(matrix, member_rows, offsets)
        centroids = {}
        for i, gram in enumerate(grams):
            row = means[i]
            row.setflags(write=False)
            centroids[gram] = row
        return centroids

    def __len__(self) -> int:
        return len(self.vocab)

    def __contains__(self, word: str) -> bool:
        return word in self.vocab


def load_vectors(
    source: Union[str, Path, bytes, IO[bytes], IO[str]],
    max_vocab: int | None = DEFAULT_MAX_VOCAB,
) -> EmbeddingTable:
    """Load a textual vector file: header ``<count> <dim>``, then one
    ``word v1 ... vD`` row per line.

    Reads at most ``max_vocab`` rows. Raises :class:`FormatError` with
    the offending line number on a malformed header, a component-count
    mismatch, or a non-numeric component.
    """
    if isinstance(source, (str, Path)):
        stream: IO[str] = open(source, "r", encoding="utf-8")
        close = True
    elif isinstance(source, bytes):
        stream = io.StringIO(source.decode("utf-8"))
        close = False
    else:
        raw = source.read()
        stream = io.StringIO(raw.decode("utf-8") if isinstance(raw, bytes) else raw)
        close = False
    try:
        header = stream.readline()
        parts = header.split()
        if len(parts) != 2:
            raise FormatError(1, "header must be '<count> <dim>'")
        try:
            count, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(1, "header must contain two integers") from None
        if count < 0 or dim < 1:
            raise FormatError(1, f"bad header values {count} {dim}")
        limit = count if max_vocab is None else min(count, max_vocab)
        vocab: dict[str, np.ndarray] = {}
        for lineno, line in enumerate(stream, start=2):
            if len(vocab) >= limit:
                break
            if not line.strip():
                continue
            fields = line.rstrip("\n").split(" ")
            word = fields[0]
            components = [f for f in fields[1:] if f]
            if len(components) != dim:
                raise FormatError(lineno, f"expected {dim} components, got {len(components)}")
            try:
                vec = np.array([float(c) for c in components], dtype=np.float64)
            except ValueError:
                raise FormatError(lineno, "non-numeric vector component") from None
            if word not in vocab:
                vocab[word] = vec
        return EmbeddingTable(dim, vocab)
    finally:
        if close:
            stream.close()


def embed(table: EmbeddingTable, word: str) -> np.ndarray:
    """Vector for a word: stored row if in vocabulary (exact match,
    then lowercase retry), otherwise the mean of the centroids of its
    known tri-grams.

    Raises :class:`OovUnresolvable` when no tri-gram of the word
    appears in the centroid index.
    """
    if not word:
        raise ValueError("word must be non-empty")
    hit = table.vocab.get(word)
    if hit is None:
        hit = table.vocab.get(word.lower())
    if hit is not None:
        return hit
    acc = np.zeros(table.dimension)
    found = 0
    for gram in char_ngrams(word):
        centroid = table.trigram_centroids.get(gram)
        if centroid is not None:
            acc += centroid
            found += 1
    if found == 0:
        raise OovUnresolvable(f"no known tri-gram in {word!r}")
    return acc / found


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity of two non-zero vectors of equal dimension."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise DimensionMismatch(f"dimensions differ: {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise ZeroVector("cosine undefined for a zero vector")
    return float(u @ v) / (nu * nv)
