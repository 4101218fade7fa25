"""Small shared helpers."""

import numpy as np


def minmax(values):
    """Min-max rescale to [0, 1]; a constant input maps to all zeros."""
    v = np.asarray(values, dtype=np.float64)
    lo = v.min()
    hi = v.max()
    if hi - lo <= 0.0:
        return np.zeros_like(v)
    return (v - lo) / (hi - lo)
