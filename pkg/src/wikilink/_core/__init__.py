"""Kernel backend selection.

Imports the compiled speedups when they were built, otherwise the
pure-Python twins.  Set WIKILINK_FORCE_PURE=1 to skip the compiled
module (used by the backend-equivalence tests and the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("WIKILINK_FORCE_PURE"):
    from . import pure as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pure as _impl

BACKEND: str = _impl.BACKEND_NAME
PairAccumulator = _impl.PairAccumulator
dijkstra_csr = _impl.dijkstra_csr

__all__ = ["BACKEND", "PairAccumulator", "dijkstra_csr"]
