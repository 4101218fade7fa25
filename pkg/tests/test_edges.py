import numpy as np
import pytest

from graphsal.color import rgb_to_lab
from graphsal.edges import sobel_edge_map, validate_edge_map


def _lab_of(gray_u8):
    img = np.repeat(gray_u8[:, :, np.newaxis], 3, axis=2).astype(np.uint8)
    return rgb_to_lab(img)


def test_constant_image_is_all_zero():
    lab = _lab_of(np.full((20, 30), 77, np.uint8))
    assert np.array_equal(sobel_edge_map(lab), np.zeros((20, 30)))


def test_vertical_step_edge():
    k = 12
    gray = np.zeros((24, 30), np.uint8)
    gray[:, k:] = 200
    edge = sobel_edge_map(_lab_of(gray))
    # the two response columns straddle the step
    assert np.all(edge[:, k - 1] == 1.0)
    assert np.all(edge[:, k] == 1.0)
    far = np.concatenate([edge[:, : k - 2].ravel(), edge[:, k + 3:].ravel()])
    assert np.all(far < 0.05)


def test_values_bounded():
    rng = np.random.default_rng(11)
    lab = rgb_to_lab(rng.integers(0, 256, size=(18, 22, 3), dtype=np.uint8))
    edge = sobel_edge_map(lab)
    assert edge.min() >= 0.0 and edge.max() <= 1.0
    assert edge.max() == 1.0  # min-max stretches to the top


def test_external_map_passthrough():
    rng = np.random.default_rng(4)
    ext = rng.random((10, 12))
    out = validate_edge_map(ext, width=12, height=10)
    assert np.array_equal(out, ext)


def test_external_map_validation_errors():
    with pytest.raises(ValueError):
        validate_edge_map(np.zeros((5, 5)), width=6, height=5)
    bad = np.zeros((5, 6))
    bad[0, 0] = 1.5
    with pytest.raises(ValueError):
        validate_edge_map(bad, width=6, height=5)
