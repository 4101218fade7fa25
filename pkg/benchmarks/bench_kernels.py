#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Runs both implementations on the same 400x300 workload, checks they agree
bit for bit, and prints per-kernel timings plus a full-pipeline timing for
whichever implementation is active in this process.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import importlib.util
import math
import time

import numpy as np

from graphsal import PipelineConfig, run_pipeline
from graphsal.color import rgb_to_lab
from graphsal.features import extract_features
from graphsal.kernels import USING_NATIVE, fallback
from graphsal.slic import slic_segment

W, H, N_SUPERPIXELS = 400, 300, 250


def _test_image():
    rng = np.random.default_rng(7)
    img = np.zeros((H, W, 3), np.uint8)
    img[:, :] = (90, 120, 150)
    img[90:210, 140:260] = (230, 80, 40)
    img += rng.integers(0, 6, img.shape).astype(np.uint8)
    return img


def _time(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    spec = importlib.util.find_spec("graphsal.kernels._native")
    if spec is None:
        print("compiled kernels not built; only the fallback is measured")
        native = None
    else:
        from graphsal.kernels import _native as native

    img = _test_image()
    lab = np.ascontiguousarray(rgb_to_lab(img))
    labels, n = slic_segment(lab, N_SUPERPIXELS)
    feats = extract_features(labels, lab)

    step = math.sqrt(W * H / N_SUPERPIXELS)
    nx, ny = 18, 14
    centers = np.empty((nx * ny, 5))
    k = 0
    for j in range(ny):
        for i in range(nx):
            cx, cy = (i + 0.5) * W / nx, (j + 0.5) * H / ny
            centers[k, 0:3] = lab[int(cy), int(cx)]
            centers[k, 3:5] = (cx, cy)
            k += 1
    search = int(math.ceil(2 * step))
    sw = (10.0 / step) ** 2

    rng = np.random.default_rng(1)
    edge = np.ascontiguousarray(rng.random((H, W)))
    coords = np.rint(feats.centroid * [W - 1, H - 1]).astype(np.int64)
    skip = feats.is_border.astype(np.uint8)

    rows = []
    fb_assign, (fb_labels, _) = _time(lambda: fallback.slic_assign(lab, centers, search, sw), args.repeat)
    fb_acc, (fb_sums, fb_counts) = _time(lambda: fallback.slic_accumulate(lab, labels, n), args.repeat)
    fb_line, fb_mat = _time(lambda: fallback.pairwise_line_max(edge, coords, skip), args.repeat)
    rows.append(("fallback", fb_assign, fb_acc, fb_line))

    if native is not None:
        nv_assign, (nv_labels, _) = _time(lambda: native.slic_assign(lab, centers, search, sw), args.repeat)
        nv_acc, (nv_sums, nv_counts) = _time(lambda: native.slic_accumulate(lab, labels, n), args.repeat)
        nv_line, nv_mat = _time(lambda: native.pairwise_line_max(edge, coords, skip), args.repeat)
        rows.append(("native", nv_assign, nv_acc, nv_line))
        assert np.array_equal(fb_labels, nv_labels), "assignment outputs differ"
        assert np.array_equal(fb_sums, nv_sums) and np.array_equal(fb_counts, nv_counts)
        assert np.array_equal(fb_mat, nv_mat), "line-max outputs differ"
        print("outputs identical across implementations: yes")

    print(f"\nkernel timings, {W}x{H}, {n} superpixels (best of {args.repeat}):")
    print(f"{'impl':10s} {'slic_assign':>12s} {'slic_accum':>12s} {'line_max':>12s}")
    for name, a, b, c in rows:
        print(f"{name:10s} {a * 1e3:10.1f}ms {b * 1e3:10.1f}ms {c * 1e3:10.1f}ms")
    if native is not None:
        print(f"{'speedup':10s} {fb_assign / nv_assign:11.1f}x {fb_acc / nv_acc:11.1f}x "
              f"{fb_line / nv_line:11.1f}x")

    which = "native" if USING_NATIVE else "fallback"
    t, _ = _time(lambda: run_pipeline(img, PipelineConfig()), max(1, args.repeat - 1))
    print(f"\nfull pipeline with active kernels ({which}): {t:.2f}s per image")
    print("set GRAPHSAL_PURE=1 to force the fallback for the pipeline timing")


if __name__ == "__main__":
    main()
