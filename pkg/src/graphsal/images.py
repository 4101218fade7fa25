"""Image file handling (PNG/JPEG in, 8-bit grayscale PNG out)."""

import numpy as np
from PIL import Image

MIN_SIDE = 16


def load_rgb(path):
    """Load an image as (H, W, 3) uint8 RGB; grayscale is promoted."""
    with Image.open(path) as im:
        rgb = im.convert("RGB")
        arr = np.asarray(rgb, dtype=np.uint8)
    h, w = arr.shape[:2]
    if w < MIN_SIDE or h < MIN_SIDE:
        raise ValueError(f"image {path} is {w}x{h}; minimum side is {MIN_SIDE}")
    return arr


def load_gray01(path):
    """Load an 8-bit grayscale image as float64 in [0, 1]."""
    with Image.open(path) as im:
        arr = np.asarray(im.convert("L"), dtype=np.uint8)
    return arr.astype(np.float64) / 255.0


def load_gt(path, threshold=128):
    """Load a ground-truth mask, binarized at pixel value >= threshold."""
    with Image.open(path) as im:
        arr = np.asarray(im.convert("L"), dtype=np.uint8)
    return arr >= threshold


def save_gray_u8(path, values):
    """Save a (H, W) uint8 array as grayscale PNG."""
    arr = np.asarray(values)
    if arr.dtype != np.uint8:
        raise ValueError("expected uint8 values")
    Image.fromarray(arr, mode="L").save(path, format="PNG")
