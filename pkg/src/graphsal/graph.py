"""Pairwise node distances, affinities, and shortest paths to a virtual node.

The graph connects adjacent superpixels only; a seed set is attached to a
single virtual node through zero-cost edges, so the geodesic cost of a node
is its cheapest accumulated dissimilarity to the whole seed set.
"""

import heapq
from dataclasses import dataclass

import numpy as np

from . import kernels
from .util import minmax

DEFAULT_SIGMA = 0.1
DEFAULT_BORDER_MIX = 0.5
# Weight of the spatial distance inside the affinity exponent. At sigma 0.1
# the exponent scale is 2 sigma^2 = 0.02, while adjacent superpixels sit
# ~0.1-0.17 apart in sine spatial distance; left unweighted, that one term
# drives every adjacency affinity to ~1e-4 and accumulated path costs reduce
# to hop counts, which flattens the confidence maps. The attenuation keeps
# similar-adjacent affinities near 1 while far pairs still decay.
DEFAULT_SPATIAL_ATTENUATION = 0.01


@dataclass
class AffinityMatrix:
    A: np.ndarray
    d_color: np.ndarray
    d_spatial: np.ndarray
    d_edge: np.ndarray
    color_scale: float  # raw Lab distance mapped to 1.0 by the color normalization


@dataclass
class SeedSet:
    role: str  # "background" | "foreground"
    members: np.ndarray  # sorted indices

    def __post_init__(self):
        self.members = np.unique(np.asarray(self.members, dtype=np.int64))


@dataclass
class SaliencyGraph:
    node_count: int
    edge_i: np.ndarray
    edge_j: np.ndarray
    edge_cost: np.ndarray
    seed_nodes: np.ndarray  # zero-cost attachments to the virtual node


def color_distance(feats):
    """Pairwise Euclidean distance of mean Lab colors, scaled so the
    largest pair maps to 1. Returns (matrix, raw scale)."""
    c = feats.mean_color
    diff = c[:, np.newaxis, :] - c[np.newaxis, :, :]
    d = np.sqrt((diff * diff).sum(axis=2))
    scale = float(d.max())
    if scale <= 0.0:
        return np.zeros_like(d), 0.0
    return d / scale, scale


def sine_spatial_distance(feats):
    """Periodic spatial distance over normalized centroids.

    sqrt(sin^2(pi dx) + sin^2(pi dy)) / sqrt(2): zero for coincident nodes
    and also for nodes on opposite image borders.
    """
    p = feats.centroid
    dx = np.abs(p[:, np.newaxis, 0] - p[np.newaxis, :, 0])
    dy = np.abs(p[:, np.newaxis, 1] - p[np.newaxis, :, 1])
    sx = np.sin(np.pi * dx)
    sy = np.sin(np.pi * dy)
    return np.sqrt(sx * sx + sy * sy) / np.sqrt(2.0)


def intervening_contour(feats, edge_map, d_color, d_spatial, mix=DEFAULT_BORDER_MIX):
    """Max edge probability along the raster line between centroids.

    Border-to-border pairs skip the line probe (the image frame would
    dominate it) and use mix*d_color + (1-mix)*d_spatial instead.
    """
    w, h = feats.image_size
    coords = np.rint(feats.centroid * np.array([w - 1, h - 1], dtype=np.float64))
    coords = coords.astype(np.int64)
    border = feats.is_border
    edge = np.ascontiguousarray(edge_map, dtype=np.float64)
    d = kernels.pairwise_line_max(edge, coords, border.astype(np.uint8))
    both = border[:, np.newaxis] & border[np.newaxis, :]
    d[both] = mix * d_color[both] + (1.0 - mix) * d_spatial[both]
    np.fill_diagonal(d, 0.0)
    return d


def affinity_from_distances(summed, sigma=DEFAULT_SIGMA):
    """exp(-d / (2 sigma^2)) applied to an already-summed distance matrix."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return np.exp(-summed / (2.0 * sigma * sigma))


def build_affinity(feats, edge_map, sigma=DEFAULT_SIGMA, mix=DEFAULT_BORDER_MIX,
                   mode="full", spatial_attenuation=DEFAULT_SPATIAL_ATTENUATION):
    """Compute component distances and the affinity matrix.

    mode selects which components enter the exponent: "color",
    "color_spatial", or "full" (color + spatial + edge). The spatial
    component is attenuated before entering the sum; see
    DEFAULT_SPATIAL_ATTENUATION.
    """
    dc, scale = color_distance(feats)
    ds = sine_spatial_distance(feats)
    de = intervening_contour(feats, edge_map, dc, ds, mix)
    if mode == "color":
        summed = dc
    elif mode == "color_spatial":
        summed = dc + spatial_attenuation * ds
    elif mode == "full":
        summed = dc + spatial_attenuation * ds + de
    else:
        raise ValueError(f"unknown edge-weight mode {mode!r}")
    return AffinityMatrix(
        A=affinity_from_distances(summed, sigma),
        d_color=dc,
        d_spatial=ds,
        d_edge=de,
        color_scale=scale,
    )


def build_graph(feats, A, seeds):
    """Adjacency edges with cost 1 - A(i, j), plus zero-cost seed edges."""
    if seeds.members.size == 0:
        raise ValueError("no seeds")
    ii, jj = np.nonzero(np.triu(feats.adjacency, k=1))
    return SaliencyGraph(
        node_count=feats.n,
        edge_i=ii.astype(np.int64),
        edge_j=jj.astype(np.int64),
        edge_cost=1.0 - A[ii, jj],
        seed_nodes=seeds.members,
    )


def geodesic_to_virtual(graph):
    """Per-node minimal accumulated edge cost to the virtual node (Dijkstra).

    Seeds cost 0. Nodes with no path get the maximum finite cost plus the
    largest single edge cost, keeping every output finite.
    """
    n = graph.node_count
    adj = [[] for _ in range(n)]
    for i, j, c in zip(graph.edge_i, graph.edge_j, graph.edge_cost):
        adj[i].append((int(j), float(c)))
        adj[j].append((int(i), float(c)))

    dist = np.full(n, np.inf)
    heap = []
    for s in graph.seed_nodes:
        dist[s] = 0.0
        heapq.heappush(heap, (0.0, int(s)))
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, c in adj[u]:
            nd = d + c
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))

    unreachable = ~np.isfinite(dist)
    if unreachable.any():
        finite_max = dist[~unreachable].max()
        step = graph.edge_cost.max() if graph.edge_cost.size else 0.0
        dist[unreachable] = finite_max + step
    return dist


def seed_confidence(graph):
    """Min-max normalized geodesic costs; seeds map to 0."""
    return minmax(geodesic_to_virtual(graph))
