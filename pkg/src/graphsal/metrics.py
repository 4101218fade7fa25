"""Benchmark metrics: PR curves, F-measure, MAE, ROC-AUC.

Saliency maps are 8-bit; curves sample every integer threshold 0..255 with
inclusive binarization (predicted positive when value >= t).
"""

from dataclasses import dataclass, field

import numpy as np

DEFAULT_BETA2 = 0.3
N_THRESHOLDS = 256


def _check_pair(sal, gt):
    sal = np.asarray(sal)
    gt = np.asarray(gt).astype(bool)
    if sal.shape != gt.shape:
        raise ValueError(f"saliency {sal.shape} and ground truth {gt.shape} differ in size")
    return sal, gt


def pr_at_threshold(sal, gt, t):
    """Precision and recall of the binarization sal >= t.

    Precision is 1 when nothing is predicted; recall is 1 when the ground
    truth is empty.
    """
    sal, gt = _check_pair(sal, gt)
    pred = sal >= t
    tp = np.count_nonzero(pred & gt)
    fp = np.count_nonzero(pred & ~gt)
    fn = np.count_nonzero(~pred & gt)
    precision = tp / (tp + fp) if tp + fp > 0 else 1.0
    recall = tp / (tp + fn) if tp + fn > 0 else 1.0
    return precision, recall


def threshold_counts(sal, gt):
    """(tp, fp, fn, tn) arrays over thresholds 0..255, via histograms."""
    sal, gt = _check_pair(sal, gt)
    sal = sal.astype(np.int64)
    pos_hist = np.bincount(sal[gt].ravel(), minlength=N_THRESHOLDS)
    neg_hist = np.bincount(sal[~gt].ravel(), minlength=N_THRESHOLDS)
    # predicted positive at threshold t: values >= t
    tp = np.cumsum(pos_hist[::-1])[::-1].astype(np.float64)
    fp = np.cumsum(neg_hist[::-1])[::-1].astype(np.float64)
    n_pos = pos_hist.sum()
    n_neg = neg_hist.sum()
    fn = n_pos - tp
    tn = n_neg - fp
    return tp, fp, fn, tn


def pr_curve(sal, gt):
    """(precision, recall) arrays at thresholds 0..255."""
    tp, fp, fn, _ = threshold_counts(sal, gt)
    denom_p = tp + fp
    denom_r = tp + fn
    precision = np.where(denom_p > 0, tp / np.where(denom_p > 0, denom_p, 1.0), 1.0)
    recall = np.where(denom_r > 0, tp / np.where(denom_r > 0, denom_r, 1.0), 1.0)
    return precision, recall


def f_measure(precision, recall, beta2=DEFAULT_BETA2):
    """(1 + b2) P R / (b2 P + R), zero when the denominator vanishes."""
    p = np.asarray(precision, dtype=np.float64)
    r = np.asarray(recall, dtype=np.float64)
    denom = beta2 * p + r
    out = np.where(denom > 0, (1.0 + beta2) * p * r / np.where(denom > 0, denom, 1.0), 0.0)
    return float(out) if out.ndim == 0 else out


def max_f_measure(sal, gt, beta2=DEFAULT_BETA2):
    precision, recall = pr_curve(sal, gt)
    return float(f_measure(precision, recall, beta2).max())


def mae(sal, gt):
    """Mean absolute difference, saliency rescaled to [0, 1]."""
    sal, gt = _check_pair(sal, gt)
    s = sal.astype(np.float64)
    if np.issubdtype(np.asarray(sal).dtype, np.integer):
        s = s / 255.0
    return float(np.abs(s - gt.astype(np.float64)).mean())


def roc_curve(sal, gt):
    """(fpr, tpr) at thresholds 0..255; degenerate ground truths (empty or
    full) yield flat curves handled by roc_auc."""
    tp, fp, fn, tn = threshold_counts(sal, gt)
    n_pos = tp + fn
    n_neg = fp + tn
    tpr = np.where(n_pos > 0, tp / np.where(n_pos > 0, n_pos, 1.0), 1.0)
    fpr = np.where(n_neg > 0, fp / np.where(n_neg > 0, n_neg, 1.0), 0.0)
    return fpr, tpr


def roc_auc(sal, gt):
    """Trapezoidal area under the ROC curve anchored at (0,0) and (1,1).

    Returns (auc, degenerate): a ground truth that is empty or full cannot
    be ranked, so the area is reported as 1.0 with the degenerate flag set.
    """
    sal, gt = _check_pair(sal, gt)
    n_pos = int(np.count_nonzero(gt))
    if n_pos == 0 or n_pos == gt.size:
        return 1.0, True
    fpr, tpr = roc_curve(sal, gt)
    xs = np.concatenate([[0.0], fpr[::-1], [1.0]])
    ys = np.concatenate([[0.0], tpr[::-1], [1.0]])
    return float(np.trapezoid(ys, xs)), False


@dataclass
class ImageResult:
    image_id: str
    max_f: float
    mae: float
    auc: float
    degenerate_gt: bool = False


@dataclass
class EvalReport:
    per_image: list = field(default_factory=list)
    pr_precision: np.ndarray = None
    pr_recall: np.ndarray = None
    roc_fpr: np.ndarray = None
    roc_tpr: np.ndarray = None

    @property
    def mean_max_f(self):
        return float(np.mean([r.max_f for r in self.per_image]))

    @property
    def mean_mae(self):
        return float(np.mean([r.mae for r in self.per_image]))

    @property
    def mean_auc(self):
        return float(np.mean([r.auc for r in self.per_image]))


def evaluate_pairs(pairs, beta2=DEFAULT_BETA2):
    """Evaluate (image_id, saliency, gt) triples into an EvalReport with
    mean curves over the set."""
    report = EvalReport()
    p_sum = np.zeros(N_THRESHOLDS)
    r_sum = np.zeros(N_THRESHOLDS)
    fpr_sum = np.zeros(N_THRESHOLDS)
    tpr_sum = np.zeros(N_THRESHOLDS)
    for image_id, sal, gt in pairs:
        precision, recall = pr_curve(sal, gt)
        fpr, tpr = roc_curve(sal, gt)
        auc, degenerate = roc_auc(sal, gt)
        report.per_image.append(
            ImageResult(
                image_id=image_id,
                max_f=float(f_measure(precision, recall, beta2).max()),
                mae=mae(sal, gt),
                auc=auc,
                degenerate_gt=degenerate,
            )
        )
        p_sum += precision
        r_sum += recall
        fpr_sum += fpr
        tpr_sum += tpr
    n = len(report.per_image)
    if n:
        report.pr_precision = p_sum / n
        report.pr_recall = r_sum / n
        report.roc_fpr = fpr_sum / n
        report.roc_tpr = tpr_sum / n
    return report
