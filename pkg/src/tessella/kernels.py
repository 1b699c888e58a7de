"""Select the compiled kernels when available, else the numpy fallback.

Set ``TESSELLA_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

if os.environ.get("TESSELLA_PURE_PYTHON"):
    from ._kernels_py import cover_grid, edge_to_edge_pairs, overlap_pairs
    BACKEND = "python"
else:
    try:
        from ._kernels import cover_grid, edge_to_edge_pairs, overlap_pairs
        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._kernels_py import cover_grid, edge_to_edge_pairs, overlap_pairs
        BACKEND = "python"

__all__ = ["BACKEND", "cover_grid", "edge_to_edge_pairs", "overlap_pairs"]
