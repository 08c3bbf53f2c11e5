"""Univariate and multidimensional Gini indices and the Gini/AUC relation."""

from dataclasses import dataclass

import numpy as np

from ._validation import check_scores, check_vector, freeze
from .exceptions import DomainError, ShapeError, UndefinedGiniError, UndefinedWeightsError
from .whitening import DEFAULT_RIDGE, estimate_moments, fit_zca_cor, whiten

_MEAN_RTOL = 1e-15


def gini_univariate(values):
    """Relative mean absolute difference of ``values``.

    ``sum_ij |x_i - x_j| / (2 n^2 |mean|)``, evaluated in O(n log n) on the
    sorted values. Using ``|mean|`` keeps the index defined for columns with
    a negative mean; for nonnegative data the result lies in ``[0, 1)``.

    Raises
    ------
    UndefinedGiniError
        If the mean is zero relative to the magnitude of the values.
    """
    x = np.sort(check_vector(values, name="values"), kind="stable")
    n = x.shape[0]
    mean = x.mean()
    if abs(mean) <= _MEAN_RTOL * np.abs(x).max():
        raise UndefinedGiniError("Gini index is undefined for a zero-mean vector")
    # sum_ij |x_i - x_j| = 2 * sum_m m (n - m) (x_(m+1) - x_(m)); gaps are >= 0
    m = np.arange(1, n, dtype=np.float64)
    return float(np.dot(m * (n - m), np.diff(x)) / (n * n * abs(mean)))


@dataclass(frozen=True, eq=False)
class GiniDecomposition:
    """Per-component Ginis of the whitened scores and their convex weights.

    ``weights[i] = |whitened_means[i]| / sum_j |whitened_means[j]|`` and
    ``aggregate = weights @ per_class_gini``. A component with zero weight
    whose whitened column has zero mean contributes a Gini of 0.
    """

    per_class_gini: np.ndarray
    whitened_means: np.ndarray
    weights: np.ndarray
    aggregate: float
    class_names: tuple = ()


def multidimensional_gini(model, scores, class_names=None):
    """Decompose the multidimensional Gini index of ``scores``.

    Parameters
    ----------
    model : WhiteningModel
        Fitted on ``scores`` (or on data with the same column layout).
    scores : array-like of shape (n, k)
    class_names : sequence of str, optional
        Used in error messages and carried on the result.
    """
    scores = check_scores(scores, n_classes=model.n_components)
    k = scores.shape[1]
    names = tuple(class_names) if class_names is not None else tuple(str(i) for i in range(k))
    if len(names) != k:
        raise ShapeError(f"expected {k} class names, got {len(names)}")
    whitened = whiten(model, scores)
    whitened_means = model.matrix @ model.moments.mean
    magnitude = np.abs(whitened_means)
    total = magnitude.sum()
    if not total > 0:
        raise UndefinedWeightsError("all whitened means are zero; weights are undefined")
    weights = magnitude / total

    ginis = np.zeros(k)
    for i in range(k):
        column = whitened[:, i]
        if weights[i] == 0 and not np.any(column):
            continue
        try:
            ginis[i] = gini_univariate(column)
        except UndefinedGiniError as exc:
            raise UndefinedGiniError(str(exc), class_name=names[i]) from exc
    return GiniDecomposition(
        per_class_gini=freeze(ginis),
        whitened_means=freeze(whitened_means),
        weights=freeze(weights),
        aggregate=float(np.dot(weights, ginis)),
        class_names=names,
    )


def fit_gini_decomposition(scores, ridge=DEFAULT_RIDGE, class_names=None):
    """Moments, ZCA-cor whitening and Gini decomposition in one step.

    Returns the fitted :class:`WhiteningModel` and the
    :class:`GiniDecomposition` of ``scores``.
    """
    model = fit_zca_cor(estimate_moments(scores), ridge=ridge)
    return model, multidimensional_gini(model, scores, class_names=class_names)


def gini_from_auc(auc):
    """``G = 2 AUC - 1``."""
    auc = float(auc)
    if not 0.0 <= auc <= 1.0:
        raise DomainError(f"AUC must lie in [0, 1], got {auc}")
    return 2.0 * auc - 1.0


def auc_from_gini(g):
    """``AUC = (G + 1) / 2``."""
    g = float(g)
    if not -1.0 <= g <= 1.0:
        raise DomainError(f"Gini index must lie in [-1, 1], got {g}")
    return (g + 1.0) / 2.0
