# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernels: boundary sweep and Hausdorff distance.

These are the hot inner loops of the toolkit; a numpy/scipy fallback with
identical semantics lives in ``_py.py``.
"""

from libc.math cimport INFINITY, sqrt

import numpy as np


def nondominated_min_mask(const double[:, ::1] pts):
    """Mask of minimally non-dominated rows of ``pts``.

    ``pts`` must be unique (p1, p2) rows sorted ascending by (p1, p2); a
    row then survives iff its p2 is strictly below the running minimum.
    """
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t i
    cdef double best = INFINITY
    out = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] mask = out
    for i in range(n):
        if pts[i, 1] < best:
            mask[i] = 1
            best = pts[i, 1]
    return out.view(np.bool_)


def hausdorff_distance(const double[:, ::1] a, const double[:, ::1] b):
    """Symmetric Hausdorff distance between two planar point sets."""
    cdef double cmax2 = _directed_sq(a, b, 0.0)
    cmax2 = _directed_sq(b, a, cmax2)
    return sqrt(cmax2)


cdef double _directed_sq(const double[:, ::1] u, const double[:, ::1] v, double cmax2):
    # Running max of squared nearest distances; the inner loop aborts as
    # soon as a neighbour closer than the current max is found.
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t m = v.shape[0]
    cdef Py_ssize_t i, j
    cdef double cmin2, dx, dy, d2
    cdef bint aborted
    for i in range(n):
        cmin2 = INFINITY
        aborted = False
        for j in range(m):
            dx = u[i, 0] - v[j, 0]
            dy = u[i, 1] - v[j, 1]
            d2 = dx * dx + dy * dy
            if d2 < cmax2:
                aborted = True
                break
            if d2 < cmin2:
                cmin2 = d2
        if not aborted and cmin2 > cmax2:
            cmax2 = cmin2
    return cmax2
