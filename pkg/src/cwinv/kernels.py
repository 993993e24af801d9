"""Kernel backend selection.

The compiled extension is used when importable; set ``CWINV_PURE_PYTHON=1``
to force the pure-Python fallback.  ``BACKEND`` names the active one.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("CWINV_PURE_PYTHON", "").strip() not in ("", "0"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def canonical_labeling(n: int, adj, colors=None) -> list[int]:
    if _compiled is not None:
        return _compiled.canonical_labeling(n, adj, colors)
    return _pykernels.canonical_labeling(n, adj, colors)


def betti_sweep(n: int, adj, p: int) -> dict[tuple[int, int], int]:
    if _compiled is not None and n <= _compiled.MAX_SWEEP_VERTICES:
        return _compiled.betti_sweep(n, adj, p)
    return _pykernels.betti_sweep(n, adj, p)
