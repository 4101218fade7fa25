"""Pure-numpy implementations of the hot per-pixel kernels.

Mirrors graphsal.kernels._native operation for operation; both paths
perform the same floating-point arithmetic in the same order so they
produce identical results.
"""

import numpy as np


def slic_assign(lab, centers, search_radius, spatial_weight):
    """Assign every pixel to the nearest cluster center.

    lab: (H, W, 3) float64 image. centers: (K, 5) rows [L, a, b, x, y].
    Distance is squared color distance plus spatial_weight times squared
    pixel distance; only pixels within search_radius of a center compete
    for it. Returns (labels, best_dist); unassigned pixels carry -1.
    """
    h, w = lab.shape[:2]
    labels = np.full((h, w), -1, dtype=np.int64)
    best = np.full((h, w), np.inf, dtype=np.float64)
    xs_row = np.arange(w, dtype=np.float64)
    ys_col = np.arange(h, dtype=np.float64)
    for k in range(centers.shape[0]):
        cl, ca, cb, cx, cy = centers[k]
        x0 = max(0, int(np.floor(cx)) - search_radius)
        x1 = min(w, int(np.floor(cx)) + search_radius + 1)
        y0 = max(0, int(np.floor(cy)) - search_radius)
        y1 = min(h, int(np.floor(cy)) + search_radius + 1)
        if x0 >= x1 or y0 >= y1:
            continue
        win = lab[y0:y1, x0:x1]
        dl = win[:, :, 0] - cl
        da = win[:, :, 1] - ca
        db = win[:, :, 2] - cb
        dx = xs_row[x0:x1] - cx
        dy = ys_col[y0:y1] - cy
        dsp = dx[np.newaxis, :] * dx[np.newaxis, :] + dy[:, np.newaxis] * dy[:, np.newaxis]
        d = (dl * dl + da * da + db * db) + spatial_weight * dsp
        sub = best[y0:y1, x0:x1]
        mask = d < sub
        sub[mask] = d[mask]
        labels[y0:y1, x0:x1][mask] = k
    return labels, best


def slic_accumulate(lab, labels, k):
    """Per-label sums of (L, a, b, x, y) and member counts."""
    h, w = lab.shape[:2]
    flat = labels.ravel()
    sums = np.empty((k, 5), dtype=np.float64)
    for c in range(3):
        sums[:, c] = np.bincount(flat, weights=lab[:, :, c].ravel(), minlength=k)[:k]
    xg = np.tile(np.arange(w, dtype=np.float64), h)
    yg = np.repeat(np.arange(h, dtype=np.float64), w)
    sums[:, 3] = np.bincount(flat, weights=xg, minlength=k)[:k]
    sums[:, 4] = np.bincount(flat, weights=yg, minlength=k)[:k]
    counts = np.bincount(flat, minlength=k)[:k]
    return sums, counts


def _line_indices(x0, y0, x1, y1):
    adx = abs(x1 - x0)
    ady = abs(y1 - y0)
    sx = 1 if x1 >= x0 else -1
    sy = 1 if y1 >= y0 else -1
    if adx >= ady:
        if adx == 0:
            return np.array([x0]), np.array([y0])
        ks = np.arange(adx + 1, dtype=np.int64)
        xs = x0 + sx * ks
        ys = y0 + sy * ((ks * ady + (adx - adx // 2 - 1)) // adx)
    else:
        ks = np.arange(ady + 1, dtype=np.int64)
        ys = y0 + sy * ks
        xs = x0 + sx * ((ks * adx + (ady - ady // 2 - 1)) // ady)
    return xs, ys


def pairwise_line_max(edge, coords, skip):
    """Max edge-map value along the raster line between every coord pair.

    edge: (H, W) float64, coords: (N, 2) int64 pixel (x, y), skip: (N,)
    bool; pairs where both endpoints are flagged are left at 0 (the
    caller substitutes a different distance for those).
    """
    n = coords.shape[0]
    out = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        xi, yi = int(coords[i, 0]), int(coords[i, 1])
        for j in range(i + 1, n):
            if skip[i] and skip[j]:
                continue
            xs, ys = _line_indices(xi, yi, int(coords[j, 0]), int(coords[j, 1]))
            m = float(edge[ys, xs].max())
            out[i, j] = m
            out[j, i] = m
    return out
