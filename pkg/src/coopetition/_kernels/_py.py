"""Pure-Python (numpy/scipy) implementations of the scan kernels.

Used when the compiled extension is unavailable or explicitly disabled.
Must stay result-identical to ``_speedups``; ``tests/test_kernels.py``
checks the agreement.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree


def nondominated_min_mask(pts: np.ndarray) -> np.ndarray:
    """Mask of minimally non-dominated rows of ``pts``.

    ``pts`` must be unique (p1, p2) rows sorted ascending by (p1, p2).
    Under that precondition a row survives iff its p2 is strictly below
    the running minimum of all earlier rows.
    """
    p2 = pts[:, 1]
    mask = np.empty(len(p2), dtype=bool)
    mask[0] = True
    mask[1:] = p2[1:] < np.minimum.accumulate(p2)[:-1]
    return mask


def hausdorff_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric Hausdorff distance between two planar point sets."""
    d_ab = cKDTree(b).query(a, k=1)[0].max()
    d_ba = cKDTree(a).query(b, k=1)[0].max()
    return float(max(d_ab, d_ba))
