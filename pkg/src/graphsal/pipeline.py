"""End-to-end per-image pipeline and its stage products."""

from dataclasses import dataclass

import numpy as np

from . import background as bg
from . import foreground as fg
from . import refine as rf
from .color import rgb_to_lab
from .config import PipelineConfig
from .edges import sobel_edge_map, validate_edge_map
from .features import extract_features
from .graph import SeedSet, build_affinity, build_graph, geodesic_to_virtual
from .slic import slic_segment
from .util import minmax


@dataclass
class PipelineResult:
    labels: np.ndarray
    feats: object
    divergence: np.ndarray
    bg_seeds: np.ndarray
    bg_costs: np.ndarray       # raw geodesic costs to the background virtual node
    bg_conf: np.ndarray
    rare: np.ndarray
    fg_region: object
    fg_costs: np.ndarray       # raw geodesic costs to the foreground virtual node
    fg_conf: np.ndarray
    s_com: np.ndarray
    active: np.ndarray
    clusters: np.ndarray
    final: np.ndarray          # per-superpixel scores in [0, 1]
    affinity: object
    saliency: np.ndarray       # rendered uint8 image

    @property
    def fg_mask(self):
        mask = np.zeros(self.feats.n, dtype=bool)
        mask[self.fg_region.members] = True
        return mask


def average_to_superpixels(pixel_map, labels, n):
    """Mean of a per-pixel map inside each superpixel."""
    flat = labels.ravel()
    counts = np.bincount(flat, minlength=n).astype(np.float64)
    sums = np.bincount(flat, weights=np.asarray(pixel_map, dtype=np.float64).ravel(),
                       minlength=n)
    return sums / counts


def run_pipeline(rgb, cfg=None, edge_map=None, objectness_map=None):
    """Run the full detection pipeline on an (H, W, 3) uint8 RGB array.

    edge_map, when given, replaces the built-in gradient detector;
    objectness_map, when given, joins the refinement gate. Both are
    per-pixel maps in [0, 1] matching the image size.
    """
    cfg = cfg or PipelineConfig()
    h, w = rgb.shape[:2]
    lab = rgb_to_lab(rgb)
    labels, n = slic_segment(lab, cfg.n_superpixels, cfg.slic_compactness)
    feats = extract_features(labels, lab)

    if edge_map is not None:
        edge = validate_edge_map(edge_map, w, h)
    else:
        edge = sobel_edge_map(lab)

    aff = build_affinity(feats, edge, sigma=cfg.affinity_sigma,
                         mix=cfg.border_edge_mix, mode=cfg.edge_weights,
                         spatial_attenuation=cfg.spatial_attenuation)

    div = bg.divergence(aff.A, feats)
    if cfg.seeds == "filtered":
        seeds = bg.select_background_seeds(div.div, feats)
    else:
        seeds = SeedSet(role="background", members=np.nonzero(feats.is_border)[0])
    bg_costs = geodesic_to_virtual(build_graph(feats, aff.A, seeds))
    bg_conf = minmax(bg_costs)

    rare = fg.rarity(aff.A, aff.d_color, feats, cfg.rarity_color_thresh)
    region = fg.extract_foreground(bg_conf, rare, aff.A, feats,
                                   top=cfg.area_sweep_max,
                                   bottom=cfg.area_sweep_min,
                                   steps=cfg.area_sweep_steps)
    fg_seeds = SeedSet(role="foreground", members=region.members)
    fg_costs = geodesic_to_virtual(build_graph(feats, aff.A, fg_seeds))
    fg_conf = 1.0 - minmax(fg_costs)

    s_com = rf.integrate(bg_conf, fg_conf, cfg.integration_strength)

    objectness = None
    if objectness_map is not None:
        obj = np.asarray(objectness_map, dtype=np.float64)
        if obj.shape != (h, w):
            raise ValueError("objectness/superpixel mismatch")
        objectness = average_to_superpixels(obj, labels, n)

    if cfg.refine == "none":
        final = s_com
        active = np.ones(n, dtype=bool)
        clusters = np.arange(n, dtype=np.int64)
    else:
        use_gate = cfg.refine in ("gate_only", "full")
        use_clusters = cfg.refine in ("midlevel_only", "full")
        result = rf.refine(s_com, aff, feats,
                           objectness=objectness if use_gate else None,
                           fit_weight=cfg.emr_fit_weight,
                           merge_thresh=cfg.cluster_merge_thresh,
                           laplacian=cfg.laplacian,
                           use_gate=use_gate, use_clusters=use_clusters)
        final, active, clusters = result.scores, result.active, result.clusters

    return PipelineResult(
        labels=labels,
        feats=feats,
        divergence=div.div,
        bg_seeds=seeds.members,
        bg_costs=bg_costs,
        bg_conf=bg_conf,
        rare=rare,
        fg_region=region,
        fg_costs=fg_costs,
        fg_conf=fg_conf,
        s_com=s_com,
        active=active,
        clusters=clusters,
        final=final,
        affinity=aff,
        saliency=rf.render_scores(final, labels),
    )
