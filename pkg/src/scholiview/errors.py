"""Exception types shared across the package."""


class ScholiviewError(Exception):
    """Base class for all scholiview errors."""


class ParseError(ScholiviewError):
    """Malformed N-Triples statement."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class SchemaError(ScholiviewError):
    """A document is missing a required field or holds an invalid value."""


class OrderError(ScholiviewError):
    """Time segments overlap after sorting."""


class TagFormatError(ScholiviewError):
    """A token in slash-tagged text has no tag or an unknown tag."""


class FormatError(ScholiviewError):
    """Malformed row in a vector file."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class OovUnresolvable(ScholiviewError):
    """No tri-gram of the word appears in the centroid index."""


class ZeroVector(ScholiviewError):
    """Cosine similarity is undefined for a zero-norm vector."""


class DimensionMismatch(ScholiviewError):
    """Vector or matrix dimensions do not agree."""


class DimensionError(ScholiviewError):
    """Input dimensionality too small for a 2D projection."""


class EmptyInput(ScholiviewError):
    """An operation that needs at least one element received none."""


class DegenerateGraph(ScholiviewError):
    """Fewer than two topics: the multipartite graph has no edges."""


class EmptySummary(ScholiviewError):
    """No entity survived filtering; nothing to visualize."""
