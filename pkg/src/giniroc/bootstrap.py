"""Bootstrap confidence bands for the aggregated multiclass ROC curve."""

from dataclasses import dataclass

import numpy as np

from ._validation import freeze
from .exceptions import ConfigError, NoSignalError, NumericalError
from .gini import fit_gini_decomposition
from .roc import DEFAULT_GRID_SIZE, roc_aggregated, roc_per_class, tpr_at_fpr
from .whitening import DEFAULT_RIDGE

MAX_ATTEMPT_FACTOR = 10


@dataclass(frozen=True, eq=False)
class ConfidenceBand:
    """Pointwise percentile band of aggregated TPR over a common FPR grid."""

    fpr_grid: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    level: float
    replicates: int
    auc_std_error: float = 0.0
    attempts: int = 0

    @property
    def width(self):
        return self.upper - self.lower

    def contains(self, tpr):
        """Boolean mask of grid points where ``tpr`` lies inside the band."""
        tpr = np.asarray(tpr, dtype=np.float64)
        return (self.lower <= tpr) & (tpr <= self.upper)

    def to_dict(self):
        return {
            "fpr_grid": [float(v) for v in self.fpr_grid],
            "lower": [float(v) for v in self.lower],
            "upper": [float(v) for v in self.upper],
            "level": float(self.level),
            "replicates": int(self.replicates),
            "auc_std_error": float(self.auc_std_error),
            "attempts": int(self.attempts),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            fpr_grid=freeze(np.asarray(data["fpr_grid"], dtype=np.float64)),
            lower=freeze(np.asarray(data["lower"], dtype=np.float64)),
            upper=freeze(np.asarray(data["upper"], dtype=np.float64)),
            level=float(data["level"]),
            replicates=int(data["replicates"]),
            auc_std_error=float(data["auc_std_error"]),
            attempts=int(data["attempts"]),
        )


def replicate_rng(seed, attempt):
    """Independent generator for one bootstrap attempt."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(attempt,)))


def _replicate_curve(dataset, ridge, grid_size, alignment):
    _, decomposition = fit_gini_decomposition(
        dataset.scores, ridge=ridge, class_names=dataset.class_names
    )
    per_class = roc_per_class(dataset)
    return roc_aggregated(
        dataset, decomposition.weights, grid_size, alignment=alignment, per_class=per_class
    )


def bootstrap_band(dataset, replicates=1000, level=0.95, seed=42,
                   grid_size=DEFAULT_GRID_SIZE, ridge=DEFAULT_RIDGE, alignment="fpr"):
    """Resample rows and rebuild the aggregated curve for each replicate.

    Each replicate re-estimates the moments, the whitening matrix and the
    Gini weights before aggregating. Replicate curves are read off on an
    evenly spaced FPR grid of ``grid_size`` points. Attempt ``a`` draws its
    rows from a generator seeded by ``(seed, a)``; attempts whose pipeline
    fails (for example because every class vanished) are discarded, up to
    ``10 * replicates`` attempts in total.

    Returns
    -------
    band : ConfidenceBand
    aucs : ndarray of shape (replicates,)
        Aggregated AUC of each accepted replicate.
    """
    if int(replicates) != replicates or replicates < 10:
        raise ConfigError(f"replicates must be an integer >= 10, got {replicates}")
    if not 0.0 < level < 1.0:
        raise ConfigError(f"level must lie in (0, 1), got {level}")
    if grid_size < 2:
        raise ConfigError(f"grid_size must be at least 2, got {grid_size}")
    replicates = int(replicates)
    grid = np.linspace(0.0, 1.0, grid_size)
    n = dataset.n_samples
    curves, aucs = [], []
    attempt = 0
    while len(curves) < replicates:
        if attempt >= MAX_ATTEMPT_FACTOR * replicates:
            raise NoSignalError(
                f"only {len(curves)} of {replicates} bootstrap replicates succeeded "
                f"after {attempt} attempts"
            )
        rows = replicate_rng(seed, attempt).integers(0, n, size=n)
        attempt += 1
        try:
            curve = _replicate_curve(dataset.take(rows), ridge, grid_size, alignment)
        except NumericalError:
            continue
        curves.append(tpr_at_fpr(curve, grid, side="right"))
        aucs.append(curve.auc)
    curves = np.vstack(curves)
    aucs = np.asarray(aucs)
    alpha = (1.0 - level) / 2.0
    lower, upper = np.quantile(curves, [alpha, 1.0 - alpha], axis=0)
    band = ConfidenceBand(
        fpr_grid=freeze(grid),
        lower=freeze(np.clip(lower, 0.0, 1.0)),
        upper=freeze(np.clip(upper, 0.0, 1.0)),
        level=float(level),
        replicates=replicates,
        auc_std_error=float(np.std(aucs, ddof=1)),
        attempts=attempt,
    )
    return band, freeze(aucs)
