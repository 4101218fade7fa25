# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot per-pixel kernels.

Kept in lockstep with graphsal.kernels.fallback: same arithmetic, same
operation order, so the two paths are interchangeable bit for bit.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def slic_assign(double[:, :, ::1] lab, double[:, ::1] centers,
                int search_radius, double spatial_weight):
    cdef int h = lab.shape[0]
    cdef int w = lab.shape[1]
    cdef int k_total = centers.shape[0]
    labels_arr = np.full((h, w), -1, dtype=np.int64)
    best_arr = np.full((h, w), np.inf, dtype=np.float64)
    cdef long long[:, ::1] labels = labels_arr
    cdef double[:, ::1] best = best_arr
    cdef int k, x0, x1, y0, y1, x, y
    cdef double cl, ca, cb, cx, cy, dl, da, db, dx, dy, dsp, d
    for k in range(k_total):
        cl = centers[k, 0]
        ca = centers[k, 1]
        cb = centers[k, 2]
        cx = centers[k, 3]
        cy = centers[k, 4]
        x0 = <int>cx - search_radius
        if x0 < 0:
            x0 = 0
        x1 = <int>cx + search_radius + 1
        if x1 > w:
            x1 = w
        y0 = <int>cy - search_radius
        if y0 < 0:
            y0 = 0
        y1 = <int>cy + search_radius + 1
        if y1 > h:
            y1 = h
        for y in range(y0, y1):
            dy = y - cy
            for x in range(x0, x1):
                dl = lab[y, x, 0] - cl
                da = lab[y, x, 1] - ca
                db = lab[y, x, 2] - cb
                dx = x - cx
                dsp = dx * dx + dy * dy
                d = (dl * dl + da * da + db * db) + spatial_weight * dsp
                if d < best[y, x]:
                    best[y, x] = d
                    labels[y, x] = k
    return labels_arr, best_arr


def slic_accumulate(double[:, :, ::1] lab, long long[:, ::1] labels, int k):
    cdef int h = lab.shape[0]
    cdef int w = lab.shape[1]
    sums_arr = np.zeros((k, 5), dtype=np.float64)
    counts_arr = np.zeros(k, dtype=np.int64)
    cdef double[:, ::1] sums = sums_arr
    cdef long long[::1] counts = counts_arr
    cdef int x, y
    cdef long long lb
    for y in range(h):
        for x in range(w):
            lb = labels[y, x]
            sums[lb, 0] += lab[y, x, 0]
            sums[lb, 1] += lab[y, x, 1]
            sums[lb, 2] += lab[y, x, 2]
            sums[lb, 3] += x
            sums[lb, 4] += y
            counts[lb] += 1
    return sums_arr, counts_arr


cdef double _line_max(double[:, ::1] edge, long long x0, long long y0,
                      long long x1, long long y1) noexcept nogil:
    cdef long long adx = x1 - x0 if x1 >= x0 else x0 - x1
    cdef long long ady = y1 - y0 if y1 >= y0 else y0 - y1
    cdef long long sx = 1 if x1 >= x0 else -1
    cdef long long sy = 1 if y1 >= y0 else -1
    cdef long long k, n, off, px, py
    cdef double m = 0.0
    cdef double v
    if adx >= ady:
        n = adx
        off = adx - adx // 2 - 1
        for k in range(n + 1):
            px = x0 + sx * k
            if adx == 0:
                py = y0
            else:
                py = y0 + sy * ((k * ady + off) // adx)
            v = edge[py, px]
            if v > m:
                m = v
    else:
        n = ady
        off = ady - ady // 2 - 1
        for k in range(n + 1):
            py = y0 + sy * k
            px = x0 + sx * ((k * adx + off) // ady)
            v = edge[py, px]
            if v > m:
                m = v
    return m


def pairwise_line_max(double[:, ::1] edge, long long[:, ::1] coords,
                      cnp.uint8_t[::1] skip):
    cdef int n = coords.shape[0]
    out_arr = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef int i, j
    cdef double m
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                if skip[i] and skip[j]:
                    continue
                m = _line_max(edge, coords[i, 0], coords[i, 1],
                              coords[j, 0], coords[j, 1])
                out[i, j] = m
                out[j, i] = m
    return out_arr
