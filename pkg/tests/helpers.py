"""Hand-built graph fixtures for the algorithm tests."""

import numpy as np

from graphsal.features import SuperpixelMap


def make_feats(n, mean_color=None, centroid=None, area=None, adjacency=None,
               border_sides=None, labels=None, image_size=(100, 100)):
    """SuperpixelMap assembled directly from arrays, defaults filled in."""
    if mean_color is None:
        mean_color = np.zeros((n, 3))
    if centroid is None:
        centroid = np.full((n, 2), 0.5)
    if area is None:
        area = np.full(n, 1.0 / n)
    adj = np.zeros((n, n), dtype=bool)
    if adjacency is not None:
        for i, j in adjacency:
            adj[i, j] = adj[j, i] = True
    borders = np.zeros((n, 4), dtype=bool)
    if border_sides is not None:
        for i, sides in border_sides.items():
            for s in sides:
                borders[i, s] = True
    if labels is None:
        labels = np.zeros((4, 4), dtype=np.int64)
    return SuperpixelMap(
        labels=labels,
        n=n,
        mean_color=np.asarray(mean_color, dtype=np.float64),
        centroid=np.asarray(centroid, dtype=np.float64),
        area_fraction=np.asarray(area, dtype=np.float64),
        border_sides=borders,
        adjacency=adj,
        image_size=image_size,
    )


def chain_graph_affinity():
    """Three nodes in a triangle with the costs (0,1)=0.2, (1,2)=0.3,
    (0,2)=0.9, i.e. affinities 0.8, 0.7, 0.1."""
    A = np.eye(3)
    A[0, 1] = A[1, 0] = 0.8
    A[1, 2] = A[2, 1] = 0.7
    A[0, 2] = A[2, 0] = 0.1
    feats = make_feats(3, adjacency=[(0, 1), (1, 2), (0, 2)])
    return feats, A
