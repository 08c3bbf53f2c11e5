"""Input validation helpers shared by the public functions and estimators."""

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import DataValidationError, ShapeError


def check_scores(scores, *, n_classes=None, min_samples=1, name="scores"):
    """Return ``scores`` as a finite float64 matrix of shape (n, k)."""
    try:
        scores = check_array(
            scores,
            dtype=np.float64,
            ensure_2d=True,
            ensure_all_finite=False,
            ensure_min_samples=min_samples,
            input_name=name,
        )
    except ValueError as exc:
        raise ShapeError(str(exc)) from exc
    if not np.all(np.isfinite(scores)):
        raise DataValidationError(f"{name} contains NaN or infinite values")
    if n_classes is not None and scores.shape[1] != n_classes:
        raise ShapeError(
            f"{name} has {scores.shape[1]} columns, expected {n_classes}"
        )
    return scores


def check_vector(values, *, name="values", min_length=1):
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1:
        raise ShapeError(f"{name} must be one-dimensional, got shape {values.shape}")
    if values.shape[0] < min_length:
        raise ShapeError(f"{name} needs at least {min_length} entries")
    if not np.all(np.isfinite(values)):
        raise DataValidationError(f"{name} contains NaN or infinite values")
    return values


def check_labels(labels, n_samples, n_classes):
    """Return integer class indices, verifying they fall in ``[0, n_classes)``."""
    labels = np.asarray(labels)
    if labels.ndim != 1 or labels.shape[0] != n_samples:
        raise ShapeError(
            f"labels must have shape ({n_samples},), got {labels.shape}"
        )
    if labels.size and not np.issubdtype(labels.dtype, np.integer):
        as_int = labels.astype(np.int64)
        if not np.array_equal(as_int, labels):
            raise DataValidationError("labels must be integer class indices")
        labels = as_int
    labels = labels.astype(np.int64)
    if labels.size and (labels.min() < 0 or labels.max() >= n_classes):
        raise DataValidationError(f"label indices must lie in [0, {n_classes})")
    return labels


def check_weights(weights, n_classes, tol=1e-9):
    weights = check_vector(weights, name="weights")
    if weights.shape[0] != n_classes:
        raise ShapeError(f"expected {n_classes} weights, got {weights.shape[0]}")
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > tol:
        raise DataValidationError("weights must be nonnegative and sum to 1")
    return weights


def freeze(array):
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array
