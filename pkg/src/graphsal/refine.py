"""Map integration and diffusion-based refinement.

The background and foreground confidence maps are fused into one score,
high-confidence nodes are gated as the only information spreaders, nodes
are grouped into mid-level color clusters, and a regularized ranking system
is solved over the combined similarity matrix.
"""

import heapq
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import spsolve

from .util import minmax

DEFAULT_STRENGTH = 4.0
DEFAULT_FIT_WEIGHT = 0.01
DEFAULT_MERGE_THRESH = 0.1
RESIDUAL_BOUND = 1e-8


def integrate_raw(bg_conf, fg_conf, strength=DEFAULT_STRENGTH):
    """Unnormalized fusion of the two confidence maps:
    bg * (1 - exp(-strength * fg))."""
    return np.asarray(bg_conf) * (1.0 - np.exp(-strength * np.asarray(fg_conf)))


def integrate(bg_conf, fg_conf, strength=DEFAULT_STRENGTH):
    """Fuse the two confidence maps, min-max normalized."""
    return minmax(integrate_raw(bg_conf, fg_conf, strength))


def two_level_otsu(values):
    """Threshold pair maximizing three-class between-class variance.

    Values are quantized to 256 bins over [0, 1]; a threshold t puts bin b
    in the upper class when b >= t, so the returned (low, high) satisfy
    class boundaries {v < low}, {low <= v < high}, {v >= high}. Ties break
    toward the lexicographically smallest pair. A constant input returns
    its own value twice.
    """
    bins = np.rint(np.clip(np.asarray(values, dtype=np.float64), 0.0, 1.0) * 255.0)
    hist = np.bincount(bins.astype(np.int64), minlength=256).astype(np.float64)
    nz = np.nonzero(hist)[0]
    if nz.size == 1:
        v = nz[0] / 255.0
        return v, v

    levels = np.arange(256, dtype=np.float64)
    w_pre = np.concatenate([[0.0], np.cumsum(hist)])          # w_pre[t] = mass below t
    m_pre = np.concatenate([[0.0], np.cumsum(levels * hist)])  # first moment below t
    total, m_total = w_pre[256], m_pre[256]

    t1 = np.arange(256)[:, np.newaxis]
    t2 = np.arange(256)[np.newaxis, :]
    w0 = np.broadcast_to(w_pre[:256, np.newaxis], (256, 256))
    w1 = w_pre[t2] - w_pre[t1]
    w2 = total - w_pre[t2]
    m0 = np.broadcast_to(m_pre[:256, np.newaxis], (256, 256))
    m1 = m_pre[t2] - m_pre[t1]
    m2 = m_total - m_pre[t2]

    with np.errstate(divide="ignore", invalid="ignore"):
        score = (
            np.where(w0 > 0, m0 * m0 / w0, 0.0)
            + np.where(w1 > 0, m1 * m1 / w1, 0.0)
            + np.where(w2 > 0, m2 * m2 / w2, 0.0)
        )
    score[t2 < t1] = -np.inf
    flat = int(np.argmax(score))  # row-major first max = smallest (t1, t2)
    lo, hi = divmod(flat, 256)
    return lo / 255.0, hi / 255.0


def gate_nodes(s_com, objectness=None):
    """Active-node mask: above the higher Otsu level of the combined map,
    unioned with the same gate on an optional objectness score. An empty
    union deactivates gating (everything active)."""
    s_com = np.asarray(s_com, dtype=np.float64)
    _, hi = two_level_otsu(s_com)
    active = s_com >= hi
    if objectness is not None:
        objectness = np.asarray(objectness, dtype=np.float64)
        if objectness.shape != s_com.shape:
            raise ValueError("objectness/superpixel mismatch")
        _, ohi = two_level_otsu(objectness)
        active = active | (objectness >= ohi)
    if not active.any():
        active = np.ones_like(active, dtype=bool)
    return active


def midlevel_clusters(feats, color_scale, merge_thresh=DEFAULT_MERGE_THRESH):
    """Agglomerative color clustering over the adjacency graph.

    Repeatedly merges the adjacent cluster pair with the smallest
    area-weighted mean-color distance (on the normalized color scale)
    while that distance stays below merge_thresh. Ties break on the lowest
    index pair; the lower index absorbs the higher. Returns a compact
    cluster id per superpixel.
    """
    n = feats.n
    scale = color_scale if color_scale > 0 else None
    color = feats.mean_color.astype(np.float64).copy()
    weight = feats.area_fraction.astype(np.float64).copy()
    adj = [set(map(int, np.nonzero(feats.adjacency[i])[0])) for i in range(n)]
    alive = np.ones(n, dtype=bool)
    version = np.zeros(n, dtype=np.int64)

    def pair_dist(i, j):
        if scale is None:
            return 0.0
        d = color[i] - color[j]
        return float(np.sqrt((d * d).sum())) / scale

    heap = []
    for i in range(n):
        for j in adj[i]:
            if i < j:
                heapq.heappush(heap, (pair_dist(i, j), i, j, version[i], version[j]))

    members = [[i] for i in range(n)]
    while heap:
        d, i, j, vi, vj = heapq.heappop(heap)
        if d >= merge_thresh:
            break
        if not (alive[i] and alive[j]) or version[i] != vi or version[j] != vj:
            continue
        if j not in adj[i]:
            continue
        total = weight[i] + weight[j]
        color[i] = (weight[i] * color[i] + weight[j] * color[j]) / total
        weight[i] = total
        members[i].extend(members[j])
        alive[j] = False
        adj[i].discard(j)
        for k in adj[j]:
            if k == i:
                continue
            adj[k].discard(j)
            adj[k].add(i)
            adj[i].add(k)
        adj[j] = set()
        version[i] += 1
        for k in adj[i]:
            a, b = (i, k) if i < k else (k, i)
            heapq.heappush(heap, (pair_dist(a, b), a, b, version[a], version[b]))

    clusters = np.empty(n, dtype=np.int64)
    next_id = 0
    for i in range(n):
        if alive[i]:
            for m in members[i]:
                clusters[m] = next_id
            next_id += 1
    return clusters


def midlevel_matrix(A, feats, clusters):
    """Similarity for the ranking solve: adjacency-masked affinity plus a
    same-cluster indicator (diagonal therefore 1)."""
    w = np.where(feats.adjacency, A, 0.0)
    q = (clusters[:, np.newaxis] == clusters[np.newaxis, :]).astype(np.float64)
    return w + q


@dataclass
class RefineResult:
    scores: np.ndarray
    active: np.ndarray
    clusters: np.ndarray


def ranking_solve(P, active, queries, fit_weight=DEFAULT_FIT_WEIGHT,
                  laplacian="unnormalized"):
    """Solve the gated ranking system and return the raw scores.

    Unnormalized form solves (D - a*P*G) f = y; normalized form solves
    (I - a*T*G) f = y with T = D^-1/2 P D^-1/2. G zeroes the columns of
    suppressed nodes so they never spread their value; a = 1/(1+fit_weight).
    """
    P = np.asarray(P, dtype=np.float64)
    y = np.asarray(queries, dtype=np.float64)
    act = np.asarray(active, dtype=np.float64)
    alpha = 1.0 / (1.0 + fit_weight)
    d = P.sum(axis=1)
    if laplacian == "unnormalized":
        m = np.diag(d) - alpha * (P * act[np.newaxis, :])
    elif laplacian == "normalized":
        inv_sqrt = 1.0 / np.sqrt(d)
        t = P * inv_sqrt[:, np.newaxis] * inv_sqrt[np.newaxis, :]
        m = np.eye(P.shape[0]) - alpha * (t * act[np.newaxis, :])
    else:
        raise ValueError(f"unknown laplacian mode {laplacian!r}")
    f = spsolve(sparse.csr_matrix(m), y)
    f = np.atleast_1d(f)
    residual = np.abs(m @ f - y).max()
    if residual > RESIDUAL_BOUND:
        raise RuntimeError(f"saliency ranking solve failed: residual {residual:.3e}")
    return f


def refine(s_com, aff, feats, objectness=None, fit_weight=DEFAULT_FIT_WEIGHT,
           merge_thresh=DEFAULT_MERGE_THRESH, laplacian="unnormalized",
           use_gate=True, use_clusters=True):
    """Full refinement over an AffinityMatrix: gate, cluster, solve, normalize."""
    active = gate_nodes(s_com, objectness) if use_gate else np.ones(feats.n, dtype=bool)
    if use_clusters:
        clusters = midlevel_clusters(feats, aff.color_scale, merge_thresh)
    else:
        clusters = np.arange(feats.n, dtype=np.int64)
    P = midlevel_matrix(aff.A, feats, clusters)
    f = ranking_solve(P, active, s_com, fit_weight, laplacian)
    return RefineResult(scores=minmax(f), active=active, clusters=clusters)


def render_scores(scores, labels):
    """Paint per-superpixel scores back to pixels as 8-bit grayscale."""
    v = np.clip(np.asarray(scores, dtype=np.float64), 0.0, 1.0)
    return np.rint(255.0 * v[labels]).astype(np.uint8)
