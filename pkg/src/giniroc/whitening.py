"""Moment estimation and ZCA-cor whitening.

The whitening matrix is ``W = P^{-1/2} V^{-1/2}`` where ``P`` is the
correlation matrix and ``V`` the diagonal variance matrix of the scores.
``P^{-1/2}`` comes from a symmetric eigendecomposition with an eigenvalue
floor, and an optional ridge on ``P`` keeps ``W`` finite when the score
columns are linearly dependent (softmax rows summing to one, for example).
"""

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_scores, freeze
from .exceptions import (
    DegenerateInputError,
    InsufficientDataError,
    NumericalError,
    ShapeError,
)

DEFAULT_RIDGE = 1e-8
DEFAULT_REL_FLOOR = 1e-10


@dataclass(frozen=True, eq=False)
class MomentEstimates:
    """First and second moments of a score matrix.

    Attributes
    ----------
    mean : ndarray of shape (k,)
    covariance : ndarray of shape (k, k)
        Unbiased (``1/(n-1)``) sample covariance.
    variances : ndarray of shape (k, k)
        Diagonal matrix holding the diagonal of ``covariance``.
    correlation : ndarray of shape (k, k)
        Unit-diagonal correlation matrix. Rows and columns of zero-variance
        (degenerate) components are zero off the diagonal.
    degenerate : ndarray of bool, shape (k,)
        Components with zero variance.
    """

    mean: np.ndarray
    covariance: np.ndarray
    variances: np.ndarray
    correlation: np.ndarray
    degenerate: np.ndarray

    @property
    def n_components(self):
        return self.mean.shape[0]

    @classmethod
    def from_covariance(cls, covariance, mean=None):
        """Build moments from a known covariance matrix (and optional mean)."""
        covariance = np.asarray(covariance, dtype=np.float64)
        if covariance.ndim != 2 or covariance.shape[0] != covariance.shape[1]:
            raise ShapeError(f"covariance must be square, got shape {covariance.shape}")
        k = covariance.shape[0]
        mean = np.zeros(k) if mean is None else np.asarray(mean, dtype=np.float64)
        covariance = 0.5 * (covariance + covariance.T)
        var = np.diag(covariance).copy()
        if np.any(var < 0):
            raise NumericalError("covariance has negative diagonal entries")
        return cls._assemble(mean, covariance, var, var <= 0)

    @classmethod
    def _assemble(cls, mean, covariance, var, degenerate):
        covariance = covariance.copy()
        covariance[degenerate, :] = 0.0
        covariance[:, degenerate] = 0.0
        var = np.where(degenerate, 0.0, var)
        sd = np.sqrt(np.where(degenerate, 1.0, var))
        correlation = covariance / np.outer(sd, sd)
        correlation = np.clip(0.5 * (correlation + correlation.T), -1.0, 1.0)
        np.fill_diagonal(correlation, 1.0)
        return cls(
            mean=freeze(mean),
            covariance=freeze(covariance),
            variances=freeze(np.diag(var)),
            correlation=freeze(correlation),
            degenerate=freeze(degenerate),
        )


def estimate_moments(scores):
    """Sample mean, covariance, variances and correlation of ``scores``."""
    scores = check_scores(scores)
    if scores.shape[0] < 2:
        raise InsufficientDataError("at least two samples are needed to estimate moments")
    mean = scores.mean(axis=0)
    centered = scores - mean
    covariance = centered.T @ centered / (scores.shape[0] - 1)
    covariance = 0.5 * (covariance + covariance.T)
    # A constant column may still show rounding-level variance around its mean.
    degenerate = np.ptp(scores, axis=0) == 0
    return MomentEstimates._assemble(mean, covariance, np.diag(covariance).copy(), degenerate)


def inverse_sqrt_symmetric(matrix, floor=None, rel_floor=DEFAULT_REL_FLOOR):
    """Inverse square root of a symmetric positive semi-definite matrix.

    Eigenvalues below ``floor`` are raised to it before inversion. When
    ``floor`` is not given it defaults to ``rel_floor`` times the largest
    eigenvalue.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise NumericalError("matrix contains non-finite entries")
    scale = max(np.abs(matrix).max(), np.finfo(float).tiny)
    if np.abs(matrix - matrix.T).max() > 1e-10 * scale:
        raise ShapeError("matrix is not symmetric")
    try:
        eigvals, eigvecs = np.linalg.eigh(0.5 * (matrix + matrix.T))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    if floor is None:
        if eigvals[-1] <= 0:
            raise NumericalError("matrix has no positive eigenvalue")
        floor = rel_floor * eigvals[-1]
    if floor <= 0:
        raise NumericalError("eigenvalue floor must be positive")
    scaled = eigvecs / np.sqrt(np.maximum(eigvals, floor))
    result = scaled @ eigvecs.T
    return 0.5 * (result + result.T)


@dataclass(frozen=True, eq=False)
class WhiteningModel:
    """A fitted ZCA-cor whitening transform.

    ``ridge`` is the value added to the correlation diagonal before
    renormalising to unit diagonal; ``eigenvalue_floor`` and ``n_floored``
    record how many eigenvalues of that matrix were raised to the floor.
    """

    moments: MomentEstimates
    matrix: np.ndarray
    ridge: float
    eigenvalue_floor: float
    n_floored: int
    method: str = "zca-cor"

    @property
    def n_components(self):
        return self.matrix.shape[0]

    @property
    def regularized_correlation(self):
        k = self.n_components
        return (self.moments.correlation + self.ridge * np.eye(k)) / (1.0 + self.ridge)

    @property
    def regularized_covariance(self):
        sd = np.sqrt(np.diag(self.moments.variances))
        return self.regularized_correlation * np.outer(sd, sd)

    def whitening_residual(self):
        """Largest deviation of ``W Σ_r Wᵀ`` from the identity.

        Degenerate components cannot be whitened and are left out.
        """
        keep = ~self.moments.degenerate
        product = self.matrix @ self.regularized_covariance @ self.matrix.T
        block = product[np.ix_(keep, keep)]
        return float(np.abs(block - np.eye(block.shape[0])).max())


def fit_zca_cor(moments, ridge=DEFAULT_RIDGE, rel_floor=DEFAULT_REL_FLOOR):
    """ZCA-cor whitening matrix ``W = P_r^{-1/2} V^{-1/2}``.

    ``P_r = (P + ridge I) / (1 + ridge)``. Zero-variance components get a
    zero row and column in ``W`` so they whiten to a constant zero.
    """
    if ridge < 0 or not np.isfinite(ridge):
        raise ValueError(f"ridge must be a nonnegative finite number, got {ridge}")
    degenerate = moments.degenerate
    if np.all(degenerate):
        raise DegenerateInputError("every score column has zero variance")
    k = moments.n_components
    reg_corr = (moments.correlation + ridge * np.eye(k)) / (1.0 + ridge)
    eigvals = np.linalg.eigvalsh(reg_corr)
    floor = rel_floor * eigvals[-1]
    root = inverse_sqrt_symmetric(reg_corr, floor=floor)
    var = np.diag(moments.variances)
    inv_sd = np.zeros(k)
    inv_sd[~degenerate] = 1.0 / np.sqrt(var[~degenerate])
    matrix = root * inv_sd[np.newaxis, :]
    matrix[degenerate, :] = 0.0
    if not np.all(np.isfinite(matrix)):
        raise NumericalError("whitening matrix is not finite")
    return WhiteningModel(
        moments=moments,
        matrix=freeze(matrix),
        ridge=float(ridge),
        eigenvalue_floor=float(floor),
        n_floored=int(np.sum(eigvals < floor)),
    )


def whiten(model, scores):
    """Apply ``W`` to every row of ``scores``."""
    scores = check_scores(scores, n_classes=model.n_components)
    return scores @ model.matrix.T


class ZCACorWhitener(TransformerMixin, BaseEstimator):
    """Scikit-learn transformer wrapping :func:`fit_zca_cor`.

    Parameters
    ----------
    ridge : float, default=1e-8
        Ridge added to the correlation matrix before inversion.
    rel_floor : float, default=1e-10
        Eigenvalue floor relative to the largest eigenvalue.

    Attributes
    ----------
    moments_ : MomentEstimates
    model_ : WhiteningModel
    whitening_matrix_ : ndarray of shape (n_features, n_features)
    mean_ : ndarray of shape (n_features,)
    """

    def __init__(self, ridge=DEFAULT_RIDGE, rel_floor=DEFAULT_REL_FLOOR):
        self.ridge = ridge
        self.rel_floor = rel_floor

    def fit(self, X, y=None):
        X = check_scores(X, min_samples=2, name="X")
        self.moments_ = estimate_moments(X)
        self.model_ = fit_zca_cor(self.moments_, ridge=self.ridge, rel_floor=self.rel_floor)
        self.whitening_matrix_ = self.model_.matrix
        self.mean_ = self.moments_.mean
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "model_")
        return whiten(self.model_, X)
