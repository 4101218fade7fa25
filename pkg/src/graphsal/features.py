"""Per-superpixel feature extraction from a label field."""

from dataclasses import dataclass, field

import numpy as np

SIDE_TOP, SIDE_DOWN, SIDE_LEFT, SIDE_RIGHT = 0, 1, 2, 3


@dataclass
class SuperpixelMap:
    """Label field plus per-superpixel features.

    mean_color: (N, 3) CIELAB means. centroid: (N, 2) as (x, y) in [0, 1].
    area_fraction: (N,) summing to 1. border_sides: (N, 4) bools ordered
    top, down, left, right. adjacency: (N, N) symmetric, irreflexive.
    """

    labels: np.ndarray
    n: int
    mean_color: np.ndarray
    centroid: np.ndarray
    area_fraction: np.ndarray
    border_sides: np.ndarray
    adjacency: np.ndarray
    image_size: tuple = field(default=(0, 0))  # (width, height)

    @property
    def is_border(self):
        return self.border_sides.any(axis=1)

    def neighbors(self, i):
        return np.nonzero(self.adjacency[i])[0]


def extract_features(labels, lab):
    """Aggregate pixel data into a SuperpixelMap.

    Mean colors are arithmetic means over member pixels, centroids are mean
    pixel coordinates normalized by (width-1, height-1), and adjacency links
    labels that share a 4-connected pixel boundary.
    """
    labels = np.asarray(labels)
    h, w = labels.shape
    n = int(labels.max()) + 1
    flat = labels.ravel()
    counts = np.bincount(flat, minlength=n).astype(np.float64)
    if (counts == 0).any():
        raise ValueError("every label in [0, N) must be used by at least one pixel")

    mean_color = np.empty((n, 3), dtype=np.float64)
    for c in range(3):
        mean_color[:, c] = np.bincount(flat, weights=lab[:, :, c].ravel(), minlength=n) / counts

    xg = np.tile(np.arange(w, dtype=np.float64), h)
    yg = np.repeat(np.arange(h, dtype=np.float64), w)
    cx = np.bincount(flat, weights=xg, minlength=n) / counts
    cy = np.bincount(flat, weights=yg, minlength=n) / counts
    centroid = np.stack(
        [cx / (w - 1) if w > 1 else np.full(n, 0.0), cy / (h - 1) if h > 1 else np.full(n, 0.0)],
        axis=1,
    )

    border = np.zeros((n, 4), dtype=bool)
    border[np.unique(labels[0, :]), SIDE_TOP] = True
    border[np.unique(labels[h - 1, :]), SIDE_DOWN] = True
    border[np.unique(labels[:, 0]), SIDE_LEFT] = True
    border[np.unique(labels[:, w - 1]), SIDE_RIGHT] = True

    adjacency = np.zeros((n, n), dtype=bool)
    a = labels[:, :-1].ravel()
    b = labels[:, 1:].ravel()
    diff = a != b
    adjacency[a[diff], b[diff]] = True
    a = labels[:-1, :].ravel()
    b = labels[1:, :].ravel()
    diff = a != b
    adjacency[a[diff], b[diff]] = True
    adjacency |= adjacency.T
    np.fill_diagonal(adjacency, False)

    return SuperpixelMap(
        labels=labels,
        n=n,
        mean_color=mean_color,
        centroid=centroid,
        area_fraction=counts / counts.sum(),
        border_sides=border,
        adjacency=adjacency,
        image_size=(w, h),
    )
