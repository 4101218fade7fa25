"""SLIC superpixel segmentation with deterministic grid seeding.

Local k-means in (L, a, b, x, y) space for a fixed number of iterations,
followed by connectivity enforcement: every disconnected fragment of a
label is merged into the largest 4-connected neighboring superpixel.
"""

import math

import numpy as np
from scipy import ndimage

from . import kernels

ITERATIONS = 10

_CROSS = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=np.int64)


class ImageTooSmallError(ValueError):
    pass


def _seed_grid(width, height, n_target):
    """Rows from the aspect ratio, then columns to reach n_target."""
    ny = max(1, int(math.floor(math.sqrt(n_target * height / width) + 0.5)))
    nx = max(1, int(math.floor(n_target / ny + 0.5)))
    return nx, ny


def slic_segment(lab, n_target, compactness=10.0):
    """Segment a CIELAB image into roughly n_target superpixels.

    Returns (labels, n) where labels is (H, W) int64 with values in
    [0, n) and every label forms one 4-connected region.
    """
    lab = np.ascontiguousarray(lab, dtype=np.float64)
    h, w = lab.shape[:2]
    if n_target < 1:
        raise ValueError("n_target must be at least 1")
    if compactness <= 0:
        raise ValueError("compactness must be positive")
    step = math.sqrt(w * h / n_target)
    nx, ny = _seed_grid(w, h, n_target)
    if n_target > w * h or step < 1.0 or nx > w or ny > h:
        raise ImageTooSmallError("image too small for requested superpixel count")

    centers = np.empty((nx * ny, 5), dtype=np.float64)
    k = 0
    for j in range(ny):
        for i in range(nx):
            cx = (i + 0.5) * w / nx
            cy = (j + 0.5) * h / ny
            px = min(w - 1, int(cx))
            py = min(h - 1, int(cy))
            centers[k, 0:3] = lab[py, px]
            centers[k, 3] = cx
            centers[k, 4] = cy
            k += 1

    search = int(math.ceil(2.0 * step))
    spatial_weight = (compactness / step) ** 2
    labels = None
    for _ in range(ITERATIONS):
        labels, _dist = kernels.slic_assign(lab, centers, search, spatial_weight)
        _fill_unassigned(labels, centers)
        sums, counts = kernels.slic_accumulate(lab, labels, centers.shape[0])
        nonzero = counts > 0
        centers[nonzero] = sums[nonzero] / counts[nonzero, np.newaxis]

    labels = _enforce_connectivity(labels)
    return labels, int(labels.max()) + 1


def _fill_unassigned(labels, centers):
    """Assign leftover pixels (outside every search window) spatially."""
    ys, xs = np.nonzero(labels < 0)
    if ys.size == 0:
        return
    cx = centers[:, 3]
    cy = centers[:, 4]
    for y, x in zip(ys, xs):
        d = (cx - x) ** 2 + (cy - y) ** 2
        labels[y, x] = int(np.argmin(d))


def _enforce_connectivity(labels):
    """Merge orphan fragments, then compact label ids.

    The largest 4-connected component of each label keeps it; every other
    fragment is absorbed by the adjacent superpixel with the largest pixel
    area, ties going to the lowest label id.
    """
    h, w = labels.shape
    out = labels.copy()
    n_raw = int(labels.max()) + 1

    settled = np.zeros((h, w), dtype=bool)
    pending = []
    for v in range(n_raw):
        mask = out == v
        if not mask.any():
            continue
        comp, ncomp = ndimage.label(mask, structure=_CROSS)
        if ncomp <= 1:
            settled |= mask
            continue
        sizes = np.bincount(comp.ravel())[1:]
        keep = int(np.argmax(sizes)) + 1
        settled |= comp == keep
        for ci in range(1, ncomp + 1):
            if ci != keep:
                pending.append(np.nonzero(comp == ci))

    # Orphans may only join regions that are already connected (settled);
    # the rest wait for the next round. Every round settles at least the
    # orphans on the frontier, so the queue drains.
    areas = np.bincount(out.ravel(), minlength=n_raw)
    while pending:
        deferred = []
        progressed = False
        for ys, xs in pending:
            neigh = []
            for dy, dx in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                ny_ = ys + dy
                nx_ = xs + dx
                ok = (ny_ >= 0) & (ny_ < h) & (nx_ >= 0) & (nx_ < w)
                ny_, nx_ = ny_[ok], nx_[ok]
                good = settled[ny_, nx_]
                neigh.append(out[ny_[good], nx_[good]])
            cand = np.unique(np.concatenate(neigh))
            if cand.size == 0:
                deferred.append((ys, xs))
                continue
            target = int(cand[np.argmax(areas[cand])])
            old = int(out[ys[0], xs[0]])
            out[ys, xs] = target
            settled[ys, xs] = True
            areas[target] += ys.size
            areas[old] -= ys.size
            progressed = True
        if not progressed:
            break
        pending = deferred

    used = np.unique(out)
    remap = np.zeros(n_raw, dtype=np.int64)
    remap[used] = np.arange(used.size)
    return remap[out]
