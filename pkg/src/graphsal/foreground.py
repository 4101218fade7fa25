"""Compact foreground extraction and the foreground confidence map.

A binary labeling over superpixels trades off background confidence, area,
and color commonness against a similarity-weighted boundary penalty; the
labeling is solved exactly by s-t min-cut while the area penalty is swept
from strongly positive to strongly negative. The selected region then seeds
a second shortest-path confidence map.
"""

import math
from dataclasses import dataclass

import numpy as np

from .graph import SeedSet, build_graph, geodesic_to_virtual
from .maxflow import FlowNetwork
from .util import minmax

DEFAULT_COLOR_THRESH = 0.15
CONFIDENCE_FLOOR = 1e-6
MAX_REGION_AREA = 0.6


@dataclass
class ForegroundRegion:
    members: np.ndarray
    area_penalty: float | None  # sweep value that produced the region
    from_fallback: bool = False


def rarity(A, d_color, feats, color_thresh=DEFAULT_COLOR_THRESH):
    """Commonness score: summed affinity to spatial neighbors plus summed
    affinity to same-color peers (normalized color distance below
    color_thresh). Min-max normalized; high values mark common, widely
    supported appearance."""
    off_diag = ~np.eye(feats.n, dtype=bool)
    near_color = (d_color < color_thresh) & off_diag
    raw = (A * feats.adjacency).sum(axis=1) + (A * near_color).sum(axis=1)
    return minmax(raw)


def mincut_labeling(unary, edge_i, edge_j, edge_w, n):
    """Exact minimizer of sum(unary_i * x_i) + sum(w_ij * [x_i != x_j]).

    Returns (x, energy) where x is the minimal optimal set (boolean array).
    """
    s, t = n, n + 1
    net = FlowNetwork(n + 2)
    offset = 0.0
    for i in range(n):
        u = float(unary[i])
        if u >= 0.0:
            net.add_edge(i, t, u)
        else:
            net.add_edge(s, i, -u)
            offset += u
    for i, j, w in zip(edge_i, edge_j, edge_w):
        net.add_edge(int(i), int(j), float(w), float(w))
    flow = net.max_flow(s, t)
    side = net.source_side(s)
    x = np.array(side[:n], dtype=bool)
    return x, offset + flow


def labeling_energy(x, unary, edge_i, edge_j, edge_w):
    x = np.asarray(x, dtype=bool)
    cut = x[edge_i] != x[edge_j]
    return float(unary[x].sum() + edge_w[cut].sum())


def penalty_sweep(top=4.0, bottom=-16.0, steps=32, linthresh=0.01):
    """Descending area-penalty grid, log-spaced in magnitude on both sides
    of zero (symmetric-log transform keeps the grid dense near zero)."""
    if steps < 1:
        raise ValueError("steps must be at least 1")

    def fwd(x):
        return math.copysign(math.log1p(abs(x) / linthresh), x)

    def inv(y):
        return math.copysign(math.expm1(abs(y)) * linthresh, y)

    ts = np.linspace(fwd(top), fwd(bottom), steps)
    return np.array([inv(t) for t in ts])


def otsu_threshold(values):
    """Single Otsu level on 256 bins over [0, 1]; classes are split as
    value < t and value >= t. Constant input returns its own value."""
    bins = np.rint(np.clip(values, 0.0, 1.0) * 255.0).astype(np.int64)
    hist = np.bincount(bins, minlength=256).astype(np.float64)
    nz = np.nonzero(hist)[0]
    if nz.size == 1:
        return nz[0] / 255.0
    total = hist.sum()
    levels = np.arange(256, dtype=np.float64)
    best, best_t = -1.0, 0
    for t in range(1, 256):
        w0 = hist[:t].sum()
        w1 = total - w0
        if w0 == 0.0 or w1 == 0.0:
            continue
        mu0 = (levels[:t] * hist[:t]).sum() / w0
        mu1 = (levels[t:] * hist[t:]).sum() / w1
        var = w0 * w1 * (mu0 - mu1) ** 2
        if var > best:
            best, best_t = var, t
    return best_t / 255.0


def extract_foreground(bg_conf, rare, A, feats, top=4.0, bottom=-16.0, steps=32):
    """Pick the foreground region from the area-penalty sweep.

    Unary cost of selecting node i is -ln(bg_conf_i) + penalty * area_i +
    rare_i; the pairwise term pays A(i, j) across every cut adjacency edge.
    The region returned is the minimizer at the largest penalty yielding a
    non-empty set covering at most 60% of the image; if no penalty
    qualifies, the background confidence is thresholded at its Otsu level.
    """
    s = np.clip(bg_conf, CONFIDENCE_FLOOR, 1.0)
    base = -np.log(s) + rare
    area = feats.area_fraction
    ii, jj = np.nonzero(np.triu(feats.adjacency, k=1))
    ww = A[ii, jj]

    for eta in penalty_sweep(top, bottom, steps):
        x, _energy = mincut_labeling(base + eta * area, ii, jj, ww, feats.n)
        if x.any() and area[x].sum() <= MAX_REGION_AREA:
            return ForegroundRegion(members=np.nonzero(x)[0], area_penalty=float(eta))

    t = otsu_threshold(bg_conf)
    members = np.nonzero(bg_conf >= t)[0]
    return ForegroundRegion(members=members, area_penalty=None, from_fallback=True)


def foreground_confidence(feats, A, region):
    """1 - normalized geodesic cost to the virtual foreground node; the
    region's members score exactly 1."""
    seeds = SeedSet(role="foreground", members=region.members)
    costs = geodesic_to_virtual(build_graph(feats, A, seeds))
    return 1.0 - minmax(costs)
