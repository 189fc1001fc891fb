"""Kernel backend selection.

The compiled extension is used when it imports; setting ``SEMICOMM_PURE=1``
forces the numpy/scipy fallback.
"""

from __future__ import annotations

import os

from . import _fallback

if os.environ.get("SEMICOMM_PURE", "") not in ("", "0"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:  # extension not built
        _impl = _fallback
        BACKEND = "python"

commuting_positions = _impl.commuting_positions
adjacency_csr = _impl.adjacency_csr
bfs_distances = _impl.bfs_distances
bfs_eccentricities = _impl.bfs_eccentricities
expand_frontier = _impl.expand_frontier

__all__ = [
    "BACKEND",
    "commuting_positions",
    "adjacency_csr",
    "bfs_distances",
    "bfs_eccentricities",
    "expand_frontier",
]
