"""Multiclass ROC curves weighted by the multidimensional Gini index."""

__version__ = "0.1.0"

from .bootstrap import ConfidenceBand, bootstrap_band
from .dataset import (
    ClassLabel,
    EvaluationDataset,
    class_frequencies,
    load_dataset,
    to_indicator,
    write_dataset,
)
from .estimator import GiniROC, gini_roc_auc_score
from .gini import (
    GiniDecomposition,
    auc_from_gini,
    fit_gini_decomposition,
    gini_from_auc,
    gini_univariate,
    multidimensional_gini,
)
from .pipeline import Evaluation, evaluate
from .roc import (
    AucTable,
    RocCurve,
    gini_auc,
    m_measure,
    macro_auc,
    micro_auc,
    roc_aggregated,
    roc_binary,
    roc_per_class,
)
from .whitening import (
    MomentEstimates,
    WhiteningModel,
    ZCACorWhitener,
    estimate_moments,
    fit_zca_cor,
    inverse_sqrt_symmetric,
    whiten,
)

__all__ = [
    "AucTable",
    "ClassLabel",
    "ConfidenceBand",
    "Evaluation",
    "EvaluationDataset",
    "GiniDecomposition",
    "GiniROC",
    "MomentEstimates",
    "RocCurve",
    "WhiteningModel",
    "ZCACorWhitener",
    "auc_from_gini",
    "bootstrap_band",
    "class_frequencies",
    "estimate_moments",
    "evaluate",
    "fit_gini_decomposition",
    "fit_zca_cor",
    "gini_auc",
    "gini_from_auc",
    "gini_roc_auc_score",
    "gini_univariate",
    "inverse_sqrt_symmetric",
    "load_dataset",
    "m_measure",
    "macro_auc",
    "micro_auc",
    "multidimensional_gini",
    "roc_aggregated",
    "roc_binary",
    "roc_per_class",
    "to_indicator",
    "whiten",
    "write_dataset",
]
