"""Binary, per-class, aggregated and micro-averaged ROC curves and AUC variants.

Conventions
-----------
* A sample is predicted positive at threshold ``t`` when ``score >= t``.
* Curves start at ``(0, 0)`` (threshold ``+inf``) and end at ``(1, 1)``.
* AUCs are trapezoidal areas; for binary curves this equals the
  Mann-Whitney statistic with half credit for ties.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import rankdata

from ._validation import check_vector, check_weights, freeze
from .dataset import to_indicator
from .exceptions import DataValidationError, EmptyClassError, NoSignalError, ShapeError

KINDS = ("per-class", "aggregated", "micro", "binary")
ALIGNMENTS = ("fpr", "score")
DEFAULT_GRID_SIZE = 512


def trapezoid_area(x, y):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    # fsum keeps the telescoping sum of FPR steps exact, so a perfect curve has area 1
    return math.fsum(np.diff(x) * (y[1:] + y[:-1]) / 2.0)


@dataclass(frozen=True, eq=False)
class RocCurve:
    """Ordered ROC points with their area.

    For aggregated curves built with ``alignment="fpr"`` the ``thresholds``
    column holds the shared specificity level ``1 - fpr`` at which every
    class threshold was set, since each class uses its own score cut-off.

    ``weights`` and ``dropped`` are only set on aggregated curves: the
    weights actually used (renormalised over the non-empty classes) and the
    indices of classes that were left out.
    """

    fpr: np.ndarray
    tpr: np.ndarray
    thresholds: np.ndarray
    auc: float
    kind: str = "binary"
    label: str = None
    empty: bool = False
    weights: np.ndarray = None
    dropped: tuple = ()

    @property
    def points(self):
        return list(zip(self.fpr.tolist(), self.tpr.tolist(), self.thresholds.tolist()))

    @classmethod
    def empty_curve(cls, kind, label=None):
        nothing = freeze(np.empty(0))
        return cls(nothing, nothing, nothing, float("nan"), kind=kind, label=label, empty=True)

    def to_dict(self):
        """JSON-ready mapping. Infinite padding thresholds become ``None``."""
        out = {
            "kind": self.kind,
            "label": self.label,
            "empty": self.empty,
            "auc": None if self.empty else float(self.auc),
            "fpr": [float(v) for v in self.fpr],
            "tpr": [float(v) for v in self.tpr],
            "thresholds": [float(v) if np.isfinite(v) else None for v in self.thresholds],
        }
        if self.weights is not None:
            out["weights"] = [float(v) for v in self.weights]
            out["dropped"] = list(self.dropped)
        return out

    @classmethod
    def from_dict(cls, data):
        if data["empty"]:
            return cls.empty_curve(data["kind"], data["label"])
        # only the sweep endpoints can be infinite: +inf first, -inf last
        thresholds = [
            v if v is not None else (np.inf if j == 0 else -np.inf)
            for j, v in enumerate(data["thresholds"])
        ]
        weights = data.get("weights")
        return cls(
            fpr=freeze(np.asarray(data["fpr"], dtype=np.float64)),
            tpr=freeze(np.asarray(data["tpr"], dtype=np.float64)),
            thresholds=freeze(np.asarray(thresholds, dtype=np.float64)),
            auc=float(data["auc"]),
            kind=data["kind"],
            label=data["label"],
            weights=None if weights is None else freeze(np.asarray(weights, dtype=np.float64)),
            dropped=tuple(data.get("dropped", ())),
        )


def mann_whitney_auc(positive_scores, negative_scores):
    """Probability that a positive outranks a negative, ties counted as 1/2."""
    pos = np.asarray(positive_scores, dtype=np.float64)
    neg = np.asarray(negative_scores, dtype=np.float64)
    if pos.size == 0 or neg.size == 0:
        raise EmptyClassError("both groups need at least one sample")
    ranks = rankdata(np.concatenate([pos, neg]))
    u = ranks[: pos.size].sum() - pos.size * (pos.size + 1) / 2.0
    return float(u / (pos.size * neg.size))


def _binary_inputs(scores, positives):
    scores = check_vector(scores, name="scores")
    positives = np.asarray(positives)
    if positives.shape != scores.shape:
        raise ShapeError("scores and positives must have the same length")
    if not np.all((positives == 0) | (positives == 1)):
        raise DataValidationError("positives must be a 0/1 vector")
    return scores, positives.astype(bool)


def roc_binary(scores, positives, class_index=None, class_name=None, kind="binary"):
    """ROC curve of a single score vector against 0/1 ground truth.

    Raises
    ------
    EmptyClassError
        If there are no positives or no negatives. The exception carries
        ``class_index`` and ``class_name`` so callers can apply their own
        policy.
    """
    scores, positives = _binary_inputs(scores, positives)
    n_pos = int(positives.sum())
    n_neg = positives.size - n_pos
    if n_pos == 0 or n_neg == 0:
        what = "positives" if n_pos == 0 else "negatives"
        raise EmptyClassError(
            f"class {class_name if class_name is not None else class_index} has no {what}",
            class_index=class_index,
            class_name=class_name,
        )
    order = np.argsort(-scores, kind="stable")
    ordered = scores[order]
    hits = positives[order]
    # last index of each run of equal scores
    ends = np.r_[np.flatnonzero(np.diff(ordered) != 0), ordered.size - 1]
    tps = np.cumsum(hits)[ends]
    fps = ends + 1 - tps
    fpr = np.r_[0.0, fps / n_neg]
    tpr = np.r_[0.0, tps / n_pos]
    thresholds = np.r_[np.inf, ordered[ends]]
    # trapezoid on integer counts so that 0, 1/2 and 1 come out exactly
    tp_all = np.r_[0, tps]
    fp_all = np.r_[0, fps]
    area = np.sum(np.diff(fp_all) * (tp_all[1:] + tp_all[:-1])) / (2.0 * n_pos * n_neg)
    return RocCurve(
        fpr=freeze(fpr),
        tpr=freeze(tpr),
        thresholds=freeze(thresholds),
        auc=float(area),
        kind=kind,
        label=class_name,
    )


def roc_per_class(dataset):
    """One-vs-rest curve for every class; empty classes yield flagged empty curves."""
    indicator = to_indicator(dataset)
    curves = []
    for i, name in enumerate(dataset.class_names):
        try:
            curves.append(
                roc_binary(dataset.scores[:, i], indicator[:, i], i, name, kind="per-class")
            )
        except EmptyClassError:
            curves.append(RocCurve.empty_curve("per-class", name))
    return curves


def tpr_at_fpr(curve, grid, side="right"):
    """Evaluate a curve's TPR at the given FPR values.

    Between vertices the curve is linear. At an FPR shared by several
    vertices (a vertical segment) ``side="right"`` returns the highest TPR
    and ``side="left"`` the lowest.
    """
    fpr, tpr = curve.fpr, curve.tpr
    grid = np.asarray(grid, dtype=np.float64)
    if side == "right":
        j = np.searchsorted(fpr, grid, side="right") - 1
        j = np.clip(j, 0, fpr.size - 1)
        exact = fpr[j] == grid
        nxt = np.minimum(j + 1, fpr.size - 1)
        lo, hi = j, nxt
    elif side == "left":
        j = np.searchsorted(fpr, grid, side="left")
        j = np.clip(j, 0, fpr.size - 1)
        exact = fpr[j] == grid
        prev = np.maximum(j - 1, 0)
        lo, hi = prev, j
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    span = fpr[hi] - fpr[lo]
    with np.errstate(invalid="ignore", divide="ignore"):
        frac = np.where(span > 0, (grid - fpr[lo]) / span, 0.0)
    interp = tpr[lo] + frac * (tpr[hi] - tpr[lo])
    chosen = np.where(exact, tpr[j], interp)
    return np.clip(chosen, 0.0, 1.0)


def _rates_at_thresholds(scores, positives, thresholds):
    """FPR and TPR of ``score >= t`` for each threshold."""
    pos = np.sort(scores[positives])
    neg = np.sort(scores[~positives])
    tp = pos.size - np.searchsorted(pos, thresholds, side="left")
    fp = neg.size - np.searchsorted(neg, thresholds, side="left")
    return fp / neg.size, tp / pos.size


def score_threshold_grid(scores, grid_size):
    """Evenly spaced quantiles of the pooled scores plus ``±inf``, descending."""
    quantiles = np.quantile(np.ravel(scores), np.linspace(0.0, 1.0, grid_size))
    return np.r_[np.inf, np.unique(quantiles)[::-1], -np.inf]


def _used_weights(per_class, weights):
    k = len(per_class)
    dropped = tuple(i for i, c in enumerate(per_class) if c.empty)
    if len(dropped) == k:
        raise NoSignalError("every class is empty; no aggregated curve can be built")
    used = np.array(weights, dtype=np.float64)
    used[list(dropped)] = 0.0
    total = used.sum()
    if not total > 0:
        raise NoSignalError("all weight sits on empty classes")
    return used / total, dropped


def roc_aggregated(dataset, weights, grid_size=DEFAULT_GRID_SIZE, alignment="fpr",
                   per_class=None):
    """Weighted multiclass ROC curve.

    The aggregated curve is ``(sum_i w_i FPR_i, sum_i w_i TPR_i)`` taken over
    a common sweep of operating points.

    Parameters
    ----------
    dataset : EvaluationDataset
    weights : array-like of shape (k,)
        Nonnegative class weights summing to one.
    grid_size : int, default=512
        Number of evenly spaced sweep points. With ``alignment="fpr"`` the
        vertices of every per-class curve are added so the area is exact.
    alignment : {"fpr", "score"}, default="fpr"
        ``"fpr"`` sets each class's score threshold so that all classes sit
        at the same false positive rate; the aggregated area is then exactly
        ``sum_i w_i AUC_i``. ``"score"`` applies the same raw score threshold
        to every class, sweeping evenly spaced quantiles of the pooled
        scores.
    per_class : list of RocCurve, optional
        Precomputed output of :func:`roc_per_class`.

    Empty classes are dropped and the remaining weights renormalised; the
    result records both.
    """
    if grid_size < 2:
        raise ValueError(f"grid_size must be at least 2, got {grid_size}")
    if alignment not in ALIGNMENTS:
        raise ValueError(f"alignment must be one of {ALIGNMENTS}, got {alignment!r}")
    weights = check_weights(weights, dataset.n_classes)
    if per_class is None:
        per_class = roc_per_class(dataset)
    used, dropped = _used_weights(per_class, weights)
    active = [i for i in range(len(per_class)) if i not in dropped]

    if alignment == "fpr":
        grid = np.unique(
            np.concatenate([np.linspace(0.0, 1.0, grid_size)] + [per_class[i].fpr for i in active])
        )
        lower = sum(used[i] * tpr_at_fpr(per_class[i], grid, "left") for i in active)
        upper = sum(used[i] * tpr_at_fpr(per_class[i], grid, "right") for i in active)
        scale = used[active].sum()
        lower, upper = lower / scale, upper / scale
        fpr = np.repeat(grid, 2)
        tpr = np.column_stack([lower, upper]).ravel()
        keep = np.r_[True, (np.diff(fpr) != 0) | (np.diff(tpr) != 0)]
        fpr, tpr = fpr[keep], tpr[keep]
        thresholds = 1.0 - fpr
    else:
        thresholds = score_threshold_grid(dataset.scores, grid_size)
        indicator = to_indicator(dataset).astype(bool)
        fpr = np.zeros(thresholds.size)
        tpr = np.zeros(thresholds.size)
        for i in active:
            f, t = _rates_at_thresholds(dataset.scores[:, i], indicator[:, i], thresholds)
            fpr += used[i] * f
            tpr += used[i] * t
        scale = used[active].sum()
        fpr, tpr = fpr / scale, tpr / scale
    fpr = np.clip(fpr, 0.0, 1.0)
    tpr = np.clip(tpr, 0.0, 1.0)
    return RocCurve(
        fpr=freeze(fpr),
        tpr=freeze(tpr),
        thresholds=freeze(thresholds),
        auc=trapezoid_area(fpr, tpr),
        kind="aggregated",
        label="aggregated",
        weights=freeze(used),
        dropped=dropped,
    )


def gini_auc(dataset, decomposition, grid_size=DEFAULT_GRID_SIZE, alignment="fpr",
             per_class=None):
    """Area under the aggregated curve weighted by the Gini decomposition."""
    curve = roc_aggregated(
        dataset, decomposition.weights, grid_size, alignment=alignment, per_class=per_class
    )
    return curve.auc


def macro_auc(per_class):
    """Unweighted mean AUC over the non-empty curves."""
    aucs = [c.auc for c in per_class if not c.empty]
    if not aucs:
        raise NoSignalError("no non-empty per-class curve")
    return float(np.mean(aucs))


def micro_auc(dataset):
    """Curve of the pooled one-vs-rest problem over all ``n * k`` cells."""
    return roc_binary(
        dataset.scores.ravel(), to_indicator(dataset).ravel(), kind="micro", class_name="micro"
    )


def pairwise_auc(dataset, i, j):
    """Hand and Till ``A(i, j)``: mean of ``A(i|j)`` and ``A(j|i)``."""
    in_i = dataset.labels == i
    in_j = dataset.labels == j
    a_ij = mann_whitney_auc(dataset.scores[in_i, i], dataset.scores[in_j, i])
    a_ji = mann_whitney_auc(dataset.scores[in_j, j], dataset.scores[in_i, j])
    return 0.5 * (a_ij + a_ji)


def m_measure(dataset, return_skipped=False):
    """Hand and Till M: the mean of ``A(i, j)`` over all computable class pairs.

    Pairs where either class has no samples are skipped. With
    ``return_skipped=True`` the list of skipped ``(i, j)`` pairs is returned
    alongside the value.
    """
    counts = dataset.class_counts
    values, skipped = [], []
    k = dataset.n_classes
    for i in range(k):
        for j in range(i + 1, k):
            if counts[i] == 0 or counts[j] == 0:
                skipped.append((i, j))
                continue
            values.append(pairwise_auc(dataset, i, j))
    if not values:
        raise NoSignalError("no class pair has samples on both sides")
    result = float(np.mean(values))
    return (result, skipped) if return_skipped else result


@dataclass(frozen=True, eq=False)
class AucTable:
    """All AUC variants for one model.

    ``gini_index_auc`` is ``(G + 1) / 2`` applied to the aggregate
    multidimensional Gini index, or ``None`` when that index exceeds 1.
    """

    gini_auc: float
    macro_auc: float
    micro_auc: float
    m_measure: float
    per_class_auc: np.ndarray
    gini_index_auc: float = None
    excluded_classes: tuple = ()
    skipped_pairs: tuple = field(default_factory=tuple)

    def as_row(self):
        return {
            "gini_auc": self.gini_auc,
            "macro_auc": self.macro_auc,
            "micro_auc": self.micro_auc,
            "m_measure": self.m_measure,
        }

    def to_dict(self):
        return {
            **self.as_row(),
            "gini_index_auc": self.gini_index_auc,
            "per_class_auc": [None if np.isnan(v) else float(v) for v in self.per_class_auc],
            "excluded_classes": list(self.excluded_classes),
            "skipped_pairs": [list(p) for p in self.skipped_pairs],
        }
