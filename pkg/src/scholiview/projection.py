"""2D projection of entity vectors and bubble layout.

PCA keeps the semantic arrangement of the embedding space (a linear
map), which is the point of the bubble diagram: proximity encodes
similarity, circle area encodes frequency.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DimensionError, DimensionMismatch, EmptyInput
from .ingest import EntitySource, KeyEntity

POWER_ITERATION_TOL = 1e-10
# Convergence rate is (eigval2/eigval1)^t; random covariances routinely
# carry adjacent eigenvalues within 0.5%, which needs several thousand
# iterations to push the mixing error below the 1e-6 contract.
POWER_ITERATION_MAX_ITERS = 50_000


@dataclass(frozen=True)
class Projection2D:
    mean: np.ndarray
    components: np.ndarray  # 2 x D, orthonormal rows
    coordinates: np.ndarray  # n x 2


@dataclass(frozen=True)
class Bubble:
    label: str
    x: float
    y: float
    radius: float
    frequency: int
    source: EntitySource


def _start_vectors(dim: int) -> np.ndarray:
    # Deterministic dense start vectors for the power iteration; the
    # sine pattern avoids accidental orthogonality to data directions.
    idx = np.arange(1, dim + 1, dtype=np.float64)
    return np.vstack([np.sin(idx), np.sin(2.0 * idx + 0.5)])


def _fix_signs(components: np.ndarray) -> np.ndarray:
    fixed = components.copy()
    for k in range(fixed.shape[0]):
        j = int(np.argmax(np.abs(fixed[k])))
        if fixed[k, j] < 0:
            fixed[k] = -fixed[k]
    return fixed


def pca_2d(data) -> Projection2D:
    """Project rows onto the top-2 principal components.

    Components are the leading eigenvectors of the sample covariance,
    in descending eigenvalue order, found by power iteration with
    deflation. Sign convention: each component's largest-magnitude
    entry is positive. Degenerate input (one row, or zero variance)
    yields all-zero coordinates.
    """
    x = np.asarray(data, dtype=np.float64)
    if x.ndim != 2:
        raise DimensionError("data must be an n x D matrix")
    n, dim = x.shape
    if n < 1:
        raise EmptyInput("need at least one row")
    if dim < 2:
        raise DimensionError(f"need at least 2 dimensions, got {dim}")
    if not np.all(np.isfinite(x)):
        raise ValueError("data must be finite")
    mean = x.mean(axis=0)
    centered = x - mean
    if n == 1:
        cov = np.zeros((dim, dim))
    else:
        cov = (centered.T @ centered) / (n - 1)
    comps, _ = kernels.power_iteration_top2(
        cov, POWER_ITERATION_TOL, POWER_ITERATION_MAX_ITERS, _start_vectors(dim)
    )
    comps = _fix_signs(np.asarray(comps))
    coordinates = centered @ comps.T
    return Projection2D(mean=mean, components=comps, coordinates=coordinates)


def bubble_layout(
    entities: Sequence[KeyEntity], coords, r_max: float = 1.0
) -> list[Bubble]:
    """Turn projected entity coordinates into plot-space bubbles.

    Radii follow ``r_max * sqrt(freq / freq_max)`` so circle AREA is
    proportional to entity frequency. Coordinates are rescaled affinely
    into the unit square with aspect ratio preserved and centered.
    """
    if not entities:
        raise EmptyInput("no entities to lay out")
    pts = np.asarray(coords, dtype=np.float64)
    if pts.shape != (len(entities), 2):
        raise DimensionMismatch(
            f"coords shape {pts.shape} does not match {len(entities)} entities"
        )
    if r_max <= 0:
        raise ValueError("r_max must be positive")
    freq_max = max(e.frequency for e in entities)

    xmin, ymin = pts.min(axis=0)
    xmax, ymax = pts.max(axis=0)
    width, height = xmax - xmin, ymax - ymin
    extent = max(width, height)
    if extent == 0.0:
        scaled = np.full_like(pts, 0.5)
    else:
        scale = 1.0 / extent
        offx = (1.0 - width * scale) / 2.0
        offy = (1.0 - height * scale) / 2.0
        scaled = np.empty_like(pts)
        scaled[:, 0] = (pts[:, 0] - xmin) * scale + offx
        scaled[:, 1] = (pts[:, 1] - ymin) * scale + offy

    bubbles = []
    for i, entity in enumerate(entities):
        radius = r_max * float(np.sqrt(entity.frequency / freq_max))
        bubbles.append(
            Bubble(
                label=entity.label,
                x=float(scaled[i, 0]),
                y=float(scaled[i, 1]),
                radius=radius,
                frequency=entity.frequency,
                source=entity.source,
            )
        )
    return bubbles
