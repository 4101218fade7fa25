import math

import numpy as np
import pytest

from graphsal.refine import (
    gate_nodes,
    integrate,
    integrate_raw,
    midlevel_clusters,
    midlevel_matrix,
    ranking_solve,
    render_scores,
    two_level_otsu,
)
from helpers import make_feats
from oracles import naive_two_level_otsu


class TestIntegrate:
    def test_zero_background_confidence_gives_zero(self):
        assert integrate_raw(0.0, 0.7) == 0.0

    def test_zero_foreground_confidence_gives_zero(self):
        assert integrate_raw(0.9, 0.0) == 0.0

    def test_analytic_anchor(self):
        assert abs(integrate_raw(1.0, 1.0, strength=4.0) - (1 - math.exp(-4))) < 1e-9

    def test_monotone_in_both_arguments(self):
        rng = np.random.default_rng(13)
        b = np.sort(rng.random(20))
        f = np.sort(rng.random(20))
        assert (np.diff(integrate_raw(b, 0.5)) >= 0).all()
        assert (np.diff(integrate_raw(0.5, f)) >= 0).all()

    def test_normalized_output(self):
        s = integrate(np.array([0.0, 0.5, 1.0]), np.array([0.2, 0.9, 1.0]))
        assert s.min() == 0.0 and s.max() == 1.0


class TestTwoLevelOtsu:
    def test_constant_input_degenerates(self):
        lo, hi = two_level_otsu(np.full(40, 0.5))
        assert lo == hi == np.rint(0.5 * 255) / 255.0

    def test_trimodal(self):
        v = np.concatenate([np.zeros(100), np.full(100, 0.5), np.ones(100)])
        lo, hi = two_level_otsu(v)
        assert 0.0 < lo < 0.5
        assert 0.5 < hi < 1.0

    def test_matches_exhaustive_search(self):
        rng = np.random.default_rng(31)
        for _ in range(12):
            values = rng.random(int(rng.integers(50, 400)))
            lo, hi = two_level_otsu(values)
            bins = np.rint(values * 255).astype(np.int64)
            hist = np.bincount(bins, minlength=256)
            want = naive_two_level_otsu(hist)
            assert (round(lo * 255), round(hi * 255)) == want


class TestGateNodes:
    def test_bimodal_gates_high_mode(self):
        low = np.array([0.0, 0.05, 0.1, 0.15, 0.2, 0.12])
        high = np.array([0.97, 0.98, 1.0, 0.99])
        s = np.concatenate([low, high])
        active = gate_nodes(s)
        assert np.array_equal(active, s >= 0.9)

    def test_constant_objectness_activates_everything(self):
        s = np.array([0.1, 0.2, 0.9])
        active = gate_nodes(s, objectness=np.ones(3))
        assert active.all()

    def test_length_mismatch_raises(self):
        with pytest.raises(ValueError, match="objectness/superpixel mismatch"):
            gate_nodes(np.zeros(4), objectness=np.zeros(5))

    def test_empty_union_falls_back_to_all_active(self):
        # three point masses in adjacent-ish bins force the top class to be
        # a single bin whose values all sit in the lower half of that bin,
        # so nothing satisfies v >= high threshold and the gate disengages
        s = np.array([0.0] * 10 + [0.494] * 5 + [0.4979] * 5)
        lo, hi = two_level_otsu(s)
        assert not (s >= hi).any()
        active = gate_nodes(s)
        assert active.all()


class TestMidlevelClusters:
    def _feats(self):
        return make_feats(
            4,
            mean_color=[(0, 0, 0), (1, 0, 0), (50, 0, 0), (51, 0, 0)],
            adjacency=[(0, 1), (1, 2), (2, 3)],
            area=np.full(4, 0.25),
        )

    def test_zero_threshold_keeps_singletons(self):
        feats = self._feats()
        clusters = midlevel_clusters(feats, color_scale=51.0, merge_thresh=0.0)
        assert len(set(clusters)) == 4
        A = np.full((4, 4), 0.5)
        p = midlevel_matrix(A, feats, clusters)
        w = np.where(feats.adjacency, A, 0.0)
        assert np.array_equal(p, w + np.eye(4))

    def test_uniform_image_single_cluster(self):
        feats = make_feats(3, mean_color=np.zeros((3, 3)), adjacency=[(0, 1), (1, 2)])
        clusters = midlevel_clusters(feats, color_scale=0.0, merge_thresh=0.1)
        assert len(set(clusters)) == 1
        p = midlevel_matrix(np.zeros((3, 3)), feats, clusters)
        assert (p >= 1.0).all()  # q contributes 1 everywhere

    def test_two_tone_merge_trace(self):
        # (0,1) at distance 1/51 merge first, then (2,3); the cross pair
        # stays apart (distance ~ 49/51 >= threshold)
        feats = self._feats()
        clusters = midlevel_clusters(feats, color_scale=51.0, merge_thresh=0.1)
        assert clusters[0] == clusters[1]
        assert clusters[2] == clusters[3]
        assert clusters[0] != clusters[2]
        A = np.full((4, 4), 0.3)
        p = midlevel_matrix(A, feats, clusters)
        q = np.array([
            [1, 1, 0, 0],
            [1, 1, 0, 0],
            [0, 0, 1, 1],
            [0, 0, 1, 1],
        ], dtype=float)
        assert np.array_equal(p, np.where(feats.adjacency, A, 0.0) + q)

    def test_same_cluster_pairs_monotone_in_threshold(self):
        rng = np.random.default_rng(55)
        feats = make_feats(
            8,
            mean_color=rng.random((8, 3)) * 40,
            adjacency=[(i, i + 1) for i in range(7)] + [(0, 7), (2, 5)],
        )
        prev = -1
        for thresh in (0.0, 0.05, 0.1, 0.3, 0.6, 1.1):
            clusters = midlevel_clusters(feats, color_scale=60.0, merge_thresh=thresh)
            same = int((clusters[:, None] == clusters[None, :]).sum())
            assert same >= prev
            prev = same


class TestRankingSolve:
    def test_single_node_scalar(self):
        p = np.array([[1.0]])
        f = ranking_solve(p, np.array([True]), np.array([1.0]), fit_weight=0.01)
        assert abs(f[0] - 101.0) < 1e-9

    def test_all_suppressed_reduces_to_diagonal(self):
        rng = np.random.default_rng(3)
        p = rng.random((6, 6))
        p = (p + p.T) / 2
        np.fill_diagonal(p, 1.0)
        y = rng.random(6)
        f = ranking_solve(p, np.zeros(6, dtype=bool), y)
        assert np.allclose(f, y / p.sum(axis=1), atol=1e-12)

    def test_matches_dense_inverse(self):
        rng = np.random.default_rng(71)
        for _ in range(10):
            n = int(rng.integers(2, 30))
            w = rng.random((n, n)) * (rng.random((n, n)) < 0.3)
            w = (w + w.T) / 2
            np.fill_diagonal(w, 0.0)
            clusters = rng.integers(0, max(2, n // 3), n)
            q = (clusters[:, None] == clusters[None, :]).astype(float)
            p = w + q
            active = rng.random(n) < 0.6
            y = rng.random(n)
            alpha = 1.0 / 1.01
            m = np.diag(p.sum(1)) - alpha * (p * active[None, :].astype(float))
            want = np.linalg.inv(m) @ y
            got = ranking_solve(p, active, y)
            assert np.allclose(got, want, rtol=1e-6, atol=1e-9)

    def test_normalized_variant_matches_dense_inverse(self):
        rng = np.random.default_rng(72)
        n = 12
        w = rng.random((n, n)) * 0.5
        w = (w + w.T) / 2
        np.fill_diagonal(w, 0.0)
        p = w + np.eye(n)
        active = rng.random(n) < 0.7
        y = rng.random(n)
        d = p.sum(1)
        t = p / np.sqrt(np.outer(d, d))
        m = np.eye(n) - (1 / 1.01) * (t * active[None, :].astype(float))
        want = np.linalg.inv(m) @ y
        got = ranking_solve(p, active, y, laplacian="normalized")
        assert np.allclose(got, want, rtol=1e-6, atol=1e-9)

    def test_isolated_suppressed_neighborhood_passes_query_through(self):
        # node 0 only touches suppressed nodes (including itself):
        # its score is exactly y / row-sum
        p = np.array([
            [1.0, 0.5, 0.0],
            [0.5, 1.0, 0.4],
            [0.0, 0.4, 1.0],
        ])
        active = np.array([False, False, True])
        y = np.array([0.3, 0.2, 0.9])
        f = ranking_solve(p, active, y)
        assert abs(f[0] - y[0] / 1.5) < 1e-12

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            ranking_solve(np.eye(2), np.ones(2, bool), np.ones(2), laplacian="foo")


class TestRender:
    def test_constant_one_renders_white(self):
        labels = np.zeros((5, 7), np.int64)
        out = render_scores(np.array([1.0]), labels)
        assert out.dtype == np.uint8
        assert (out == 255).all()

    def test_indicator_renders_binary_mask(self):
        labels = np.array([[0, 0, 1], [1, 1, 0]], dtype=np.int64)
        out = render_scores(np.array([0.0, 1.0]), labels)
        assert np.array_equal(out, np.array([[0, 0, 255], [255, 255, 0]], np.uint8))

    def test_arbitrary_scores_round_exactly(self):
        rng = np.random.default_rng(44)
        labels = rng.integers(0, 6, size=(9, 11)).astype(np.int64)
        scores = rng.random(6)
        out = render_scores(scores, labels)
        want = np.rint(255.0 * scores[labels]).astype(np.uint8)
        assert np.array_equal(out, want)
