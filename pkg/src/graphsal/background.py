"""Background seeding via color scatter, and the background confidence map.

Regions whose similarly-colored mass is spread widely across the image are
treated as likely background; border superpixels that fail a per-side
scatter threshold are dropped from the seed set before the shortest-path
confidence is computed.
"""

from dataclasses import dataclass

import numpy as np

from .graph import SeedSet, build_graph, seed_confidence
from .features import SIDE_TOP, SIDE_DOWN, SIDE_LEFT, SIDE_RIGHT
from .util import minmax

IMAGE_CENTER = np.array([0.5, 0.5])


@dataclass
class DivergenceScores:
    div_color: np.ndarray   # scatter around each node's own weighted mean position
    div_center: np.ndarray  # scatter measured from the image center
    div: np.ndarray         # combined, min-max normalized


@dataclass
class BorderThresholds:
    down: float

    @property
    def top(self):
        return self.down / 3.0

    @property
    def left(self):
        return 2.0 * self.down / 3.0

    @property
    def right(self):
        return 2.0 * self.down / 3.0

    def for_sides(self, sides):
        """Max threshold over a superpixel's border sides ((N, 4) bool)."""
        per_side = np.empty(4)
        per_side[SIDE_TOP] = self.top
        per_side[SIDE_DOWN] = self.down
        per_side[SIDE_LEFT] = self.left
        per_side[SIDE_RIGHT] = self.right
        return np.where(sides, per_side[np.newaxis, :], -np.inf).max(axis=1)


def divergence(A, feats):
    """Affinity-weighted spatial scatter per superpixel.

    Each node's similar-color mass is located (weighted mean position) and
    its spread around that position and around the image center are both
    measured; larger combined spread marks likely background.
    """
    s = feats.centroid
    wsum = A.sum(axis=1)
    rho = (A @ s) / wsum[:, np.newaxis]

    diff = s[np.newaxis, :, :] - rho[:, np.newaxis, :]
    dist_to_rho = np.sqrt((diff * diff).sum(axis=2))
    div_color = minmax((A * dist_to_rho).sum(axis=1) / wsum)

    dc = s - IMAGE_CENTER
    dist_to_center = np.sqrt((dc * dc).sum(axis=1))
    div_center = minmax((A * dist_to_center[np.newaxis, :]).sum(axis=1) / wsum)

    return DivergenceScores(
        div_color=div_color,
        div_center=div_center,
        div=minmax(div_color + div_center),
    )


def border_thresholds(div):
    """Down-side threshold is the mean divergence; other sides derive from it."""
    return BorderThresholds(down=float(np.mean(div)))


def border_keep_mask(div, feats, thresholds):
    """Border superpixels surviving per-side removal: a candidate is
    removed iff its divergence is strictly below its side threshold (max
    over sides for corner superpixels)."""
    t = thresholds.for_sides(feats.border_sides)
    return feats.is_border & ~(div < t)


def select_background_seeds(div, feats):
    """Border superpixels minus those whose divergence falls below the
    threshold of their side; falls back to the full border set if
    everything would be removed."""
    keep = border_keep_mask(div, feats, border_thresholds(div))
    if not keep.any():
        keep = feats.is_border
    return SeedSet(role="background", members=np.nonzero(keep)[0])


def background_confidence(feats, A, seeds):
    """Min-max normalized geodesic cost to the virtual background node.

    Background seeds score 0; nodes separated from the seeds by dissimilar
    terrain score high.
    """
    return seed_confidence(build_graph(feats, A, seeds))
