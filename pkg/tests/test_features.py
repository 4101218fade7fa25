import numpy as np

from graphsal.color import rgb_to_lab
from graphsal.features import extract_features
from graphsal.slic import slic_segment


def _lab(img):
    return rgb_to_lab(np.asarray(img, np.uint8))


def test_single_superpixel():
    img = np.full((21, 21, 3), 90, np.uint8)
    feats = extract_features(np.zeros((21, 21), np.int64), _lab(img))
    assert feats.n == 1
    assert np.allclose(feats.centroid[0], (0.5, 0.5))
    assert feats.area_fraction[0] == 1.0
    assert feats.neighbors(0).size == 0
    assert feats.border_sides[0].all()


def test_two_equal_halves():
    img = np.full((10, 20, 3), 90, np.uint8)
    labels = np.zeros((10, 20), np.int64)
    labels[:, 10:] = 1
    feats = extract_features(labels, _lab(img))
    assert np.allclose(feats.area_fraction, [0.5, 0.5])
    assert feats.adjacency[0, 1] and feats.adjacency[1, 0]
    assert not feats.adjacency[0, 0]


def test_three_superpixels_match_hand_computation():
    # 4x6 field: left 4x2 block (label 0), right-top 2x4 (label 1),
    # right-bottom 2x4 (label 2)
    labels = np.array([
        [0, 0, 1, 1, 1, 1],
        [0, 0, 1, 1, 1, 1],
        [0, 0, 2, 2, 2, 2],
        [0, 0, 2, 2, 2, 2],
    ], dtype=np.int64)
    img = np.zeros((4, 6, 3), np.uint8)
    img[labels == 0] = (255, 0, 0)
    img[labels == 1] = (0, 255, 0)
    img[labels == 2] = (0, 0, 255)
    lab = _lab(img)
    feats = extract_features(labels, lab)

    assert np.allclose(feats.area_fraction, [8 / 24, 8 / 24, 8 / 24])
    # label 0: x in {0,1}, y in {0..3} -> mean (0.5, 1.5) over (w-1, h-1)=(5, 3)
    assert np.allclose(feats.centroid[0], (0.5 / 5, 1.5 / 3))
    assert np.allclose(feats.centroid[1], (3.5 / 5, 0.5 / 3))
    assert np.allclose(feats.centroid[2], (3.5 / 5, 2.5 / 3))
    assert np.allclose(feats.mean_color[0], lab[0, 0])
    assert np.allclose(feats.mean_color[1], lab[0, 2])

    assert feats.adjacency[0, 1] and feats.adjacency[0, 2] and feats.adjacency[1, 2]
    assert set(np.nonzero(feats.border_sides[0])[0]) == {0, 1, 2}  # top, down, left
    assert set(np.nonzero(feats.border_sides[1])[0]) == {0, 3}     # top, right
    assert set(np.nonzero(feats.border_sides[2])[0]) == {1, 3}     # down, right


def test_invariants_on_real_segmentation():
    rng = np.random.default_rng(23)
    img = rng.integers(0, 256, size=(60, 80, 3), dtype=np.uint8)
    lab = _lab(img)
    labels, n = slic_segment(lab, 40)
    feats = extract_features(labels, lab)
    assert feats.n == n
    assert abs(feats.area_fraction.sum() - 1.0) < 1e-9
    assert np.array_equal(feats.adjacency, feats.adjacency.T)
    assert not feats.adjacency.diagonal().any()
    assert (feats.centroid >= 0).all() and (feats.centroid <= 1).all()
    # border flags match actual edge membership
    for v in range(n):
        ys, xs = np.nonzero(labels == v)
        expect = (
            (ys == 0).any(),
            (ys == 59).any(),
            (xs == 0).any(),
            (xs == 79).any(),
        )
        assert tuple(feats.border_sides[v]) == expect
