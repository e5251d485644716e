"""Kernel selection.

Imports the compiled ``_kernels`` extension when it is available and falls
back to the pure-Python reference otherwise. Set ``DELZANT_PURE_PYTHON=1``
to force the fallback (used by the benchmark and the parity tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("DELZANT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

int_det = _impl.int_det
int_rank = _impl.int_rank
solve = _impl.solve
enumerate_vertices = _impl.enumerate_vertices
edge_pairs = _impl.edge_pairs

__all__ = [
    "BACKEND",
    "int_det",
    "int_rank",
    "solve",
    "enumerate_vertices",
    "edge_pairs",
]
