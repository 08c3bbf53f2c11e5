"""Scikit-learn style front end."""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_scores
from .dataset import EvaluationDataset
from .exceptions import LabelVocabularyError, ShapeError
from .pipeline import evaluate
from .roc import ALIGNMENTS, DEFAULT_GRID_SIZE, roc_aggregated
from .whitening import DEFAULT_RIDGE


def _encode_labels(y, classes, n_columns):
    y = np.asarray(y)
    if classes is None:
        classes = np.unique(y)
        if classes.shape[0] != n_columns:
            raise ShapeError(
                f"y contains {classes.shape[0]} distinct classes but X has {n_columns} "
                "score columns; pass `classes` to fix the column order"
            )
    else:
        classes = np.asarray(classes)
        if classes.shape[0] != n_columns:
            raise ShapeError(f"{classes.shape[0]} classes given for {n_columns} score columns")
    lookup = {c: i for i, c in enumerate(classes.tolist())}
    try:
        labels = np.array([lookup[v] for v in y.tolist()], dtype=np.int64)
    except KeyError as exc:
        raise LabelVocabularyError(f"label {exc.args[0]!r} is not among {classes.tolist()}") from None
    return classes, labels


class GiniROC(BaseEstimator):
    """Multiclass ROC curve weighted by the multidimensional Gini index.

    ``fit(X, y)`` takes an ``(n, k)`` score matrix and the true labels,
    whitens the scores (ZCA-cor), derives one weight per class from the
    whitened means and builds the aggregated ROC curve alongside the
    one-vs-rest, micro-averaged and Hand-Till baselines.

    Parameters
    ----------
    grid_size : int, default=512
        Sweep points for the aggregated curve (and bootstrap grid).
    ridge : float, default=1e-8
        Ridge on the correlation matrix before whitening.
    alignment : {"fpr", "score"}, default="fpr"
        How per-class operating points are matched; see
        :func:`giniroc.roc.roc_aggregated`.
    n_bootstrap : int, default=0
        Bootstrap replicates for a confidence band; 0 disables it.
    level : float, default=0.95
        Band coverage level.
    random_state : int, default=42
        Bootstrap seed.
    classes : array-like, optional
        Class labels in score-column order. Defaults to ``np.unique(y)``.

    Attributes
    ----------
    classes_ : ndarray
    weights_ : ndarray of shape (n_classes,)
    whitening_ : WhiteningModel
    decomposition_ : GiniDecomposition
    per_class_curves_ : list of RocCurve
    curve_ : RocCurve
        The aggregated multiclass curve.
    micro_curve_ : RocCurve
    auc_table_ : AucTable
    band_ : ConfidenceBand or None
    bootstrap_aucs_ : ndarray or None
    evaluation_ : Evaluation

    Examples
    --------
    >>> import numpy as np
    >>> from giniroc import GiniROC
    >>> X = np.array([[0.8, 0.1, 0.1], [0.2, 0.7, 0.1], [0.1, 0.2, 0.7],
    ...               [0.6, 0.3, 0.1], [0.3, 0.5, 0.2], [0.2, 0.1, 0.7]])
    >>> est = GiniROC().fit(X, [0, 1, 2, 0, 1, 2])
    >>> round(est.auc_table_.gini_auc, 6)
    1.0
    """

    def __init__(self, grid_size=DEFAULT_GRID_SIZE, ridge=DEFAULT_RIDGE, alignment="fpr",
                 n_bootstrap=0, level=0.95, random_state=42, classes=None):
        self.grid_size = grid_size
        self.ridge = ridge
        self.alignment = alignment
        self.n_bootstrap = n_bootstrap
        self.level = level
        self.random_state = random_state
        self.classes = classes

    def _check_params(self):
        if self.alignment not in ALIGNMENTS:
            raise ValueError(f"alignment must be one of {ALIGNMENTS}, got {self.alignment!r}")
        if int(self.grid_size) != self.grid_size or self.grid_size < 2:
            raise ValueError(f"grid_size must be an integer >= 2, got {self.grid_size}")

    def fit(self, X, y):
        self._check_params()
        X = check_scores(X, min_samples=2, name="X")
        classes, labels = _encode_labels(y, self.classes, X.shape[1])
        dataset = EvaluationDataset(tuple(str(c) for c in classes), labels, X)
        bootstrap = None
        if self.n_bootstrap:
            bootstrap = {
                "replicates": self.n_bootstrap,
                "level": self.level,
                "seed": self.random_state,
            }
        result = evaluate(
            dataset,
            grid_size=int(self.grid_size),
            ridge=self.ridge,
            alignment=self.alignment,
            bootstrap=bootstrap,
        )
        self.classes_ = classes
        self.n_features_in_ = X.shape[1]
        self.evaluation_ = result
        self.whitening_ = result.whitening
        self.decomposition_ = result.decomposition
        self.weights_ = result.decomposition.weights
        self.per_class_curves_ = result.per_class
        self.curve_ = result.aggregated
        self.micro_curve_ = result.micro
        self.auc_table_ = result.auc_table
        self.band_ = result.band
        self.bootstrap_aucs_ = result.bootstrap_aucs
        return self

    def aggregated_curve(self, X, y):
        """Aggregated curve of new scores using the weights learned in ``fit``."""
        check_is_fitted(self, "weights_")
        X = check_scores(X, n_classes=self.n_features_in_, min_samples=2, name="X")
        _, labels = _encode_labels(y, self.classes_, X.shape[1])
        dataset = EvaluationDataset(tuple(str(c) for c in self.classes_), labels, X)
        return roc_aggregated(dataset, self.weights_, int(self.grid_size), alignment=self.alignment)

    def score(self, X, y):
        """Aggregated AUC of ``(X, y)`` under the fitted class weights."""
        return self.aggregated_curve(X, y).auc


def gini_roc_auc_score(y_true, y_score, *, classes=None, grid_size=DEFAULT_GRID_SIZE,
                       ridge=DEFAULT_RIDGE, alignment="fpr"):
    """Gini-weighted multiclass AUC, fitting the weights on ``y_score`` itself."""
    est = GiniROC(grid_size=grid_size, ridge=ridge, alignment=alignment, classes=classes)
    return est.fit(y_score, y_true).auc_table_.gini_auc
