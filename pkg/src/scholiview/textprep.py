"""Tokenization, POS-tag handling, stopwords, and stemming.

Two tagging routes are supported: reading externally pre-tagged text in
``surface/TAG`` slash format, and a dependency-free fallback tagger
driven by a lexicon file plus ordered suffix rules.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import TagFormatError

# Universal POS tag set, as used in pre-tagged transcripts.
UPOS_TAGS = frozenset(
    {
        "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
        "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
    }
)

_TOKEN_RE = re.compile(r"\w+|[^\w\s]", re.UNICODE)

# Ordered suffix-strip rules per language; first feasible rule applies once.
_STEM_SUFFIXES = {
    "de": ("ungen", "ung", "heit", "keit", "en", "er", "e", "n", "s"),
    "en": ("ing", "edly", "ed", "es", "s"),
}
_STEM_MIN_REMAINDER = 3


@dataclass(frozen=True)
class TaggedToken:
    """A surface form with its universal POS tag and 1-based document position."""

    surface: str
    tag: str
    position: int

    def __post_init__(self):
        if not self.surface:
            raise ValueError("empty surface form")
        if self.tag not in UPOS_TAGS:
            raise ValueError(f"unknown tag {self.tag!r}")
        if self.position < 1:
            raise ValueError("positions are 1-based")


@dataclass(frozen=True)
class StopwordList:
    language: str
    words: frozenset[str]

    def __post_init__(self):
        for w in self.words:
            if w != w.lower() or any(c.isspace() for c in w):
                raise ValueError(f"stopword {w!r} must be lowercase without whitespace")


def tokenize(text: str) -> list[str]:
    """Split text into word and punctuation tokens.

    Punctuation characters come out as separate single-character tokens;
    whitespace never appears in a token.
    """
    return _TOKEN_RE.findall(text)


def parse_tagged(text: str) -> list[TaggedToken]:
    """Parse ``surface/TAG`` slash-format text into tagged tokens.

    The split happens on the last slash, so surfaces may themselves
    contain slashes (``TCP/IP/NOUN``). Positions run 1..n.
    """
    tokens = []
    for i, raw in enumerate(text.split(), start=1):
        cut = raw.rfind("/")
        if cut <= 0 or cut == len(raw) - 1:
            raise TagFormatError(f"token {i}: {raw!r} is not of the form surface/TAG")
        surface, tag = raw[:cut], raw[cut + 1 :]
        if tag not in UPOS_TAGS:
            raise TagFormatError(f"token {i}: unknown tag {tag!r}")
        tokens.append(TaggedToken(surface, tag, i))
    return tokens


def serialize_tagged(tokens: Iterable[TaggedToken]) -> str:
    """Inverse of :func:`parse_tagged` for surfaces without whitespace."""
    return " ".join(f"{t.surface}/{t.tag}" for t in tokens)


def tag_fallback(
    tokens: Sequence[str],
    lexicon: Mapping[str, str],
    suffix_rules: Sequence[tuple[str, str]],
) -> list[TaggedToken]:
    """Tag tokens without an external model.

    Lookup order per token: case-insensitive lexicon hit, first matching
    suffix rule, then NOUN for initial-uppercase tokens (German noun
    capitalization), X otherwise.
    """
    tagged = []
    for i, tok in enumerate(tokens, start=1):
        tag = lexicon.get(tok.lower())
        if tag is None:
            lowered = tok.lower()
            for suffix, rule_tag in suffix_rules:
                if lowered.endswith(suffix):
                    tag = rule_tag
                    break
        if tag is None:
            tag = "NOUN" if tok[:1].isupper() else "X"
        tagged.append(TaggedToken(tok, tag, i))
    return tagged


def stem(word: str, language: str = "de") -> str:
    """Lowercase and strip one suffix from the language's ordered rule list.

    The first rule whose suffix matches and whose removal leaves at
    least 3 characters applies; shorter results are never produced.
    Unsupported languages lowercase only.
    """
    w = word.lower()
    for suffix in _STEM_SUFFIXES.get(language, ()):
        if w.endswith(suffix) and len(w) - len(suffix) >= _STEM_MIN_REMAINDER:
            return w[: -len(suffix)]
    return w


def is_stopword(token: str, stopwords: StopwordList) -> bool:
    return token.lower() in stopwords.words


def read_stopword_file(path, language: str) -> StopwordList:
    """Read a stopword file: UTF-8, one lowercase word per line, ``#`` comments."""
    words = set()
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        entry = line.strip()
        if not entry or entry.startswith("#"):
            continue
        if any(c.isspace() for c in entry):
            raise ValueError(f"{path}:{lineno}: stopword entries may not contain whitespace")
        words.add(entry.lower())
    return StopwordList(language=language, words=frozenset(words))


def read_lexicon_file(path) -> dict[str, str]:
    """Read a tagger lexicon: lines of ``word<TAB>TAG``."""
    lexicon = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        entry = line.strip("\n")
        if not entry.strip() or entry.startswith("#"):
            continue
        parts = entry.split("\t")
        if len(parts) != 2 or parts[1] not in UPOS_TAGS:
            raise ValueError(f"{path}:{lineno}: expected word<TAB>TAG, got {entry!r}")
        lexicon[parts[0].lower()] = parts[1]
    return lexicon


def read_suffix_rules_file(path) -> list[tuple[str, str]]:
    """Read ordered suffix rules: lines of ``suffix<TAB>TAG``."""
    rules = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        entry = line.strip("\n")
        if not entry.strip() or entry.startswith("#"):
            continue
        parts = entry.split("\t")
        if len(parts) != 2 or parts[1] not in UPOS_TAGS:
            raise ValueError(f"{path}:{lineno}: expected suffix<TAB>TAG, got {entry!r}")
        rules.append((parts[0].lower(), parts[1]))
    return rules


def _data_path(name: str) -> Path:
    return Path(resources.files("scholiview").joinpath("data", name))  # type: ignore[arg-type]


def load_stopwords(language: str) -> StopwordList:
    """Bundled stopword list for ``de`` or ``en``."""
    path = _data_path(f"stopwords_{language}.txt")
    if not path.is_file():
        raise ValueError(f"no bundled stopword list for language {language!r}")
    return read_stopword_file(path, language)


def default_lexicon(language: str = "de") -> dict[str, str]:
    path = _data_path(f"tagger_lexicon_{language}.tsv")
    if not path.is_file():
        raise ValueError(f"no bundled tagger lexicon for language {language!r}")
    return read_lexicon_file(path)


def default_suffix_rules(language: str = "de") -> list[tuple[str, str]]:
    path = _data_path(f"tagger_suffixes_{language}.tsv")
    if not path.is_file():
        raise ValueError(f"no bundled suffix rules for language {language!r}")
    return read_suffix_rules_file(path)
