"""End-to-end evaluation of one score matrix."""

from dataclasses import dataclass

import numpy as np

from .bootstrap import bootstrap_band
from .dataset import class_frequencies
from .exceptions import DomainError
from .gini import auc_from_gini, fit_gini_decomposition
from .roc import (
    DEFAULT_GRID_SIZE,
    AucTable,
    m_measure,
    macro_auc,
    micro_auc,
    roc_aggregated,
    roc_per_class,
)
from .whitening import DEFAULT_RIDGE


@dataclass(frozen=True, eq=False)
class Evaluation:
    dataset: object
    whitening: object
    decomposition: object
    per_class: list
    aggregated: object
    micro: object
    auc_table: AucTable
    band: object = None
    bootstrap_aucs: np.ndarray = None

    @property
    def frequencies(self):
        return class_frequencies(self.dataset)


def build_auc_table(dataset, decomposition, per_class, aggregated, micro):
    m_value, skipped = m_measure(dataset, return_skipped=True)
    try:
        index_auc = auc_from_gini(decomposition.aggregate)
    except DomainError:
        index_auc = None
    return AucTable(
        gini_auc=aggregated.auc,
        macro_auc=macro_auc(per_class),
        micro_auc=micro.auc,
        m_measure=m_value,
        per_class_auc=np.array([np.nan if c.empty else c.auc for c in per_class]),
        gini_index_auc=index_auc,
        excluded_classes=tuple(i for i, c in enumerate(per_class) if c.empty),
        skipped_pairs=tuple(skipped),
    )


def evaluate(dataset, grid_size=DEFAULT_GRID_SIZE, ridge=DEFAULT_RIDGE, alignment="fpr",
             bootstrap=None):
    """Run the whole pipeline on ``dataset``.

    ``bootstrap`` is ``None`` or a mapping with keys ``replicates``, ``level``
    and ``seed`` forwarded to :func:`bootstrap_band`.
    """
    model, decomposition = fit_gini_decomposition(
        dataset.scores, ridge=ridge, class_names=dataset.class_names
    )
    per_class = roc_per_class(dataset)
    aggregated = roc_aggregated(
        dataset, decomposition.weights, grid_size, alignment=alignment, per_class=per_class
    )
    micro = micro_auc(dataset)
    table = build_auc_table(dataset, decomposition, per_class, aggregated, micro)
    band = aucs = None
    if bootstrap is not None:
        band, aucs = bootstrap_band(
            dataset,
            replicates=bootstrap["replicates"],
            level=bootstrap["level"],
            seed=bootstrap["seed"],
            grid_size=grid_size,
            ridge=ridge,
            alignment=alignment,
        )
    return Evaluation(
        dataset=dataset,
        whitening=model,
        decomposition=decomposition,
        per_class=per_class,
        aggregated=aggregated,
        micro=micro,
        auc_table=table,
        band=band,
        bootstrap_aucs=aucs,
    )
