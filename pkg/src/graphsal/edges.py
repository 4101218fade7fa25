"""Edge probability maps: Sobel gradient on lightness, or a user-supplied map."""

import numpy as np


def sobel_edge_map(lab):
    """3x3 Sobel magnitude of the L channel, min-max normalized to [0, 1].

    A constant image yields an all-zero map. Borders use replicate padding.
    """
    lum = np.asarray(lab, dtype=np.float64)[:, :, 0]
    p = np.pad(lum, 1, mode="edge")
    gx = (
        (p[:-2, 2:] + 2.0 * p[1:-1, 2:] + p[2:, 2:])
        - (p[:-2, :-2] + 2.0 * p[1:-1, :-2] + p[2:, :-2])
    )
    gy = (
        (p[2:, :-2] + 2.0 * p[2:, 1:-1] + p[2:, 2:])
        - (p[:-2, :-2] + 2.0 * p[:-2, 1:-1] + p[:-2, 2:])
    )
    mag = np.sqrt(gx * gx + gy * gy)
    top = mag.max()
    if top <= 0.0:
        return np.zeros_like(mag)
    return mag / top


def validate_edge_map(values, width, height):
    """Check a precomputed edge map before using it in place of Sobel."""
    values = np.asarray(values, dtype=np.float64)
    if values.shape != (height, width):
        raise ValueError(
            f"edge map shape {values.shape} does not match image {(height, width)}"
        )
    if values.min() < 0.0 or values.max() > 1.0:
        raise ValueError("edge map values must lie in [0, 1]")
    return values
