"""Kernel backend selection.

The compiled Cython extension is preferred when it was built; otherwise
the numpy/scipy fallback is used.  ``COOPETITION_KERNELS`` overrides the
choice: ``python`` forces the fallback, ``compiled`` requires the
extension and raises if it is missing.  ``BACKEND`` names the active one.
"""

from __future__ import annotations

import os

from . import _py

_requested = os.environ.get("COOPETITION_KERNELS", "auto")
if _requested not in ("auto", "compiled", "python"):
    raise ValueError(
        f"COOPETITION_KERNELS must be auto, compiled or python, got {_requested!r}"
    )

if _requested == "python":
    _impl = _py
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        _impl = _py
        BACKEND = "python"

nondominated_min_mask = _impl.nondominated_min_mask
hausdorff_distance = _impl.hausdorff_distance

__all__ = ["BACKEND", "nondominated_min_mask", "hausdorff_distance"]
