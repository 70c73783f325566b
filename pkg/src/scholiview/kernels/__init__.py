"""Numeric kernel dispatch: compiled extension when built, numpy fallback otherwise.

Set ``SCHOLIVIEW_PURE_PYTHON=1`` to force the fallback even when the
extension is installed (used by tests and the kernel benchmark).
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("SCHOLIVIEW_PURE_PYTHON") == "1":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

pagerank_dense = _impl.pagerank_dense
power_iteration_top2 = _impl.power_iteration_top2
pairwise_inverse_distance_weights = _impl.pairwise_inverse_distance_weights
grouped_row_means = _impl.grouped_row_means


def available_backends() -> dict[str, object]:
    """Importable kernel modules keyed by backend name."""
    backends: dict[str, object] = {"python": _pykernels}
    try:
        from . import _ckernels

        backends["c"] = _ckernels
    except ImportError:
        pass
    return backends
