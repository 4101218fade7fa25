"""Batch orchestration: directory detection, dataset evaluation, ablations."""

import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import PipelineConfig
from .images import load_gray01, load_gt, load_rgb, save_gray_u8
from .metrics import evaluate_pairs
from .pipeline import run_pipeline
from .refine import render_scores

IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg")

STAGE_VECTORS = ("div", "conbp", "rare", "confp", "scom", "final")


def _find_sidecar(directory, stem):
    if directory is None:
        return None
    p = Path(directory) / f"{stem}.png"
    return p if p.exists() else None


def list_images(input_path):
    p = Path(input_path)
    if p.is_file():
        return [p]
    if p.is_dir():
        return sorted(q for q in p.iterdir() if q.suffix.lower() in IMAGE_EXTENSIONS)
    raise FileNotFoundError(f"input path {input_path} does not exist")


def _write_vector_csv(path, header, values):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", header])
        for i, v in enumerate(values):
            writer.writerow([i, f"{v:.9g}"])


def _write_matrix_csv(path, matrix):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in matrix:
            writer.writerow([f"{v:.9g}" for v in row])


def process_image(image_path, out_dir, cfg, edge_dir=None, objectness_dir=None,
                  dump_stages=False, edge_file=None, objectness_file=None):
    """Run the pipeline on one file and write its outputs; returns the
    saliency path."""
    image_path = Path(image_path)
    out_dir = Path(out_dir)
    stem = image_path.stem
    rgb = load_rgb(image_path)

    edge_map = None
    if edge_file is None:
        edge_file = _find_sidecar(edge_dir, stem)
    if edge_file is not None:
        edge_map = load_gray01(edge_file)

    objectness_map = None
    if objectness_file is None:
        objectness_file = _find_sidecar(objectness_dir, stem)
    if objectness_file is not None:
        objectness_map = load_gray01(objectness_file)

    result = run_pipeline(rgb, cfg, edge_map=edge_map, objectness_map=objectness_map)

    out_dir.mkdir(parents=True, exist_ok=True)
    sal_path = out_dir / f"{stem}_saliency.png"
    save_gray_u8(sal_path, result.saliency)

    if dump_stages:
        vectors = {
            "div": result.divergence,
            "conbp": result.bg_conf,
            "rare": result.rare,
            "confp": result.fg_conf,
            "scom": result.s_com,
            "final": result.final,
        }
        for name, vec in vectors.items():
            save_gray_u8(out_dir / f"{stem}_{name}.png",
                         render_scores(vec, result.labels))
            _write_vector_csv(out_dir / f"{stem}_{name}.csv", name, vec)
        mask = result.fg_mask
        save_gray_u8(out_dir / f"{stem}_fgmask.png",
                     (mask[result.labels] * np.uint8(255)).astype(np.uint8))
        _write_vector_csv(out_dir / f"{stem}_fgmask.csv", "member",
                          mask.astype(np.int64))
        _write_vector_csv(out_dir / f"{stem}_delta.csv", "active",
                          result.active.astype(np.int64))
        _write_vector_csv(out_dir / f"{stem}_clusters.csv", "cluster",
                          result.clusters)
        _write_vector_csv(out_dir / f"{stem}_geodesic_bg.csv", "cost", result.bg_costs)
        _write_vector_csv(out_dir / f"{stem}_geodesic_fg.csv", "cost", result.fg_costs)
        _write_matrix_csv(out_dir / f"{stem}_affinity.csv", result.affinity.A)
    return sal_path


def _process_star(args):
    return process_image(*args)


def detect(input_path, output_dir, cfg=None, edge_dir=None, objectness_dir=None,
           dump_stages=False, jobs=1, log=None):
    """Detect over a file or directory. Returns (succeeded, failed) counts."""
    cfg = cfg or PipelineConfig()
    log = log if log is not None else sys.stderr
    files = list_images(input_path)
    tasks = [(f, output_dir, cfg, edge_dir, objectness_dir, dump_stages) for f in files]
    ok = failed = 0
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_process_star, t): t[0] for t in tasks}
            for fut, path in futures.items():
                try:
                    fut.result()
                    ok += 1
                except Exception as exc:
                    failed += 1
                    print(f"warning: skipping {path}: {exc}", file=log)
    else:
        for t in tasks:
            try:
                _process_star(t)
                ok += 1
            except Exception as exc:
                failed += 1
                print(f"warning: skipping {t[0]}: {exc}", file=log)
    return ok, failed


def _pred_stem(path):
    stem = Path(path).stem
    if stem.endswith("_saliency"):
        stem = stem[: -len("_saliency")]
    return stem


def match_pairs(pred_dir, gt_dir):
    """Match prediction and ground-truth files by stem; collisions raise."""
    preds = {}
    for p in sorted(Path(pred_dir).iterdir()):
        if p.suffix.lower() not in IMAGE_EXTENSIONS:
            continue
        stem = _pred_stem(p)
        if stem in preds:
            raise ValueError(f"prediction stem collision: {stem}")
        preds[stem] = p
    gts = {}
    for p in sorted(Path(gt_dir).iterdir()):
        if p.suffix.lower() not in IMAGE_EXTENSIONS:
            continue
        stem = p.stem
        if stem in gts:
            raise ValueError(f"ground-truth stem collision: {stem}")
        gts[stem] = p
    common = sorted(set(preds) & set(gts))
    return [(stem, preds[stem], gts[stem]) for stem in common]


def evaluate_directories(pred_dir, gt_dir):
    pairs = match_pairs(pred_dir, gt_dir)
    if not pairs:
        raise ValueError("no matching prediction/ground-truth pairs")

    def loaded():
        for stem, pred_path, gt_path in pairs:
            sal = (load_gray01(pred_path) * 255.0).astype(np.uint8)
            gt = load_gt(gt_path)
            yield stem, sal, gt

    return evaluate_pairs(loaded())


def write_report(report, report_path):
    """Write the per-image CSV plus sibling curve CSV and summary JSON.

    Returns the three paths written.
    """
    report_path = Path(report_path)
    report_path.parent.mkdir(parents=True, exist_ok=True)
    base = report_path.with_suffix("") if report_path.suffix == ".csv" else report_path
    curves_path = Path(f"{base}_curves.csv")
    summary_path = Path(f"{base}_summary.json")

    with open(report_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["image", "maxF", "mae", "auc"])
        for r in report.per_image:
            writer.writerow([r.image_id, f"{r.max_f:.6f}", f"{r.mae:.6f}", f"{r.auc:.6f}"])

    with open(curves_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["threshold", "precision", "recall", "fpr", "tpr"])
        for t in range(256):
            writer.writerow([
                t,
                f"{report.pr_precision[t]:.6f}",
                f"{report.pr_recall[t]:.6f}",
                f"{report.roc_fpr[t]:.6f}",
                f"{report.roc_tpr[t]:.6f}",
            ])

    summary = {
        "meanMaxF": report.mean_max_f,
        "meanMAE": report.mean_mae,
        "meanAUC": report.mean_auc,
        "imageCount": len(report.per_image),
        "degenerateGt": [r.image_id for r in report.per_image if r.degenerate_gt],
        "note": "informal reference point for benchmark-style datasets: meanMaxF >= 0.85 (not enforced)",
    }
    with open(summary_path, "w") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    return report_path, curves_path, summary_path


def load_manifest(path):
    """Read a dataset manifest: {"pairs": [{"image", "gt", "edge"?, "objectness"?}]}."""
    with open(path) as fh:
        data = json.load(fh)
    pairs = data.get("pairs")
    if not isinstance(pairs, list) or not pairs:
        raise ValueError("manifest must contain a non-empty 'pairs' list")
    root = Path(path).parent
    resolved = []
    for entry in pairs:
        item = {}
        for key in ("image", "gt"):
            if key not in entry:
                raise ValueError(f"manifest pair missing {key!r}")
            p = (root / entry[key]).resolve() if not Path(entry[key]).is_absolute() else Path(entry[key])
            if not p.exists():
                raise ValueError(f"manifest file does not exist: {p}")
            item[key] = p
        for key in ("edge", "objectness"):
            if entry.get(key):
                p = (root / entry[key]).resolve() if not Path(entry[key]).is_absolute() else Path(entry[key])
                if not p.exists():
                    raise ValueError(f"manifest file does not exist: {p}")
                item[key] = p
        resolved.append(item)
    return resolved


def parse_variant(token):
    """Parse 'key=value[+key=value...]' into config overrides; the token
    'default' means no overrides."""
    if token == "default":
        return {}
    overrides = {}
    for part in token.split("+"):
        if "=" not in part:
            raise ValueError(f"bad variant component {part!r}; expected key=value")
        key, value = part.split("=", 1)
        overrides[key.strip()] = value.strip()
    return overrides


def variant_config(base, overrides):
    typed = {}
    for key, value in overrides.items():
        if not hasattr(base, key):
            raise ValueError(f"unknown config key {key!r}")
        current = getattr(base, key)
        if isinstance(current, bool):
            typed[key] = value.lower() in ("1", "true", "yes")
        elif isinstance(current, int):
            typed[key] = int(value)
        elif isinstance(current, float):
            typed[key] = float(value)
        else:
            typed[key] = value
    return replace(base, **typed)


def variant_name(token):
    return token.replace("=", "-").replace("+", "_") or "default"


def ablate(manifest_path, variant_tokens, out_dir, cfg=None, jobs=1, log=None):
    """Run detect+evaluate per config variant; write per-variant reports and
    a combined summary CSV. Returns rows of (variant, meanMaxF, meanMAE,
    meanAUC)."""
    cfg = cfg or PipelineConfig()
    log = log if log is not None else sys.stderr
    if not variant_tokens:
        raise ValueError("no ablation variants requested")
    pairs = load_manifest(manifest_path)
    out_dir = Path(out_dir)
    rows = []
    for token in variant_tokens:
        vcfg = variant_config(cfg, parse_variant(token))
        name = variant_name(token)
        vdir = out_dir / name
        pred_dir = vdir / "pred"
        pred_dir.mkdir(parents=True, exist_ok=True)
        tasks = []
        for item in pairs:
            tasks.append((item["image"], pred_dir, vcfg, None, None, False,
                          item.get("edge"), item.get("objectness")))
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                list(pool.map(_process_star, tasks))
        else:
            for t in tasks:
                _process_star(t)

        def loaded():
            for item in pairs:
                stem = Path(item["image"]).stem
                sal = (load_gray01(pred_dir / f"{stem}_saliency.png") * 255.0).astype(np.uint8)
                yield stem, sal, load_gt(item["gt"])

        report = evaluate_pairs(loaded())
        write_report(report, vdir / "report.csv")
        rows.append((name, report.mean_max_f, report.mean_mae, report.mean_auc))
        print(f"variant {name}: meanMaxF={report.mean_max_f:.4f} "
              f"meanMAE={report.mean_mae:.4f} meanAUC={report.mean_auc:.4f}", file=log)

    with open(out_dir / "ablation_summary.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["variant", "meanMaxF", "meanMAE", "meanAUC"])
        for name, mf, mm, ma in rows:
            writer.writerow([name, f"{mf:.6f}", f"{mm:.6f}", f"{ma:.6f}"])
    return rows
