"""sRGB to CIELAB conversion (D65 white point)."""

import numpy as np

# sRGB -> XYZ matrix and D65 reference white.
_RGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_WHITE = np.array([0.95047, 1.0, 1.08883])

_EPS = (6.0 / 29.0) ** 3
_KAPPA_INV = 1.0 / (3.0 * (6.0 / 29.0) ** 2)


def rgb_to_lab(rgb):
    """Convert an (H, W, 3) uint8 sRGB image to float64 CIELAB.

    L lands in [0, 100]; a and b roughly in [-128, 127].
    """
    rgb = np.asarray(rgb)
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise ValueError("expected an (H, W, 3) RGB array")
    c = rgb.astype(np.float64) / 255.0
    lin = np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)
    xyz = lin @ _RGB_TO_XYZ.T
    t = xyz / _WHITE
    f = np.where(t > _EPS, np.cbrt(t), t * _KAPPA_INV + 4.0 / 29.0)
    lab = np.empty_like(f)
    lab[:, :, 0] = 116.0 * f[:, :, 1] - 16.0
    lab[:, :, 1] = 500.0 * (f[:, :, 0] - f[:, :, 1])
    lab[:, :, 2] = 200.0 * (f[:, :, 1] - f[:, :, 2])
    return lab
