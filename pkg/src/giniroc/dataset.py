"""Evaluation data model and CSV ingestion.

A score file has one header row, a label column and one numeric column per
class. By default the score columns are those named ``score_<class>``; their
order fixes the class order, and the ``<class>`` suffixes form the label
vocabulary.
"""

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._validation import check_labels, check_scores, freeze
from .exceptions import (
    CsvParseError,
    DataValidationError,
    InputSchemaError,
    LabelVocabularyError,
    ShapeError,
)

SCORE_PREFIX = "score_"


@dataclass(frozen=True)
class ClassLabel:
    name: str
    index: int


@dataclass(frozen=True, eq=False)
class EvaluationDataset:
    """True labels and an ``(n, k)`` score matrix for ``k`` classes.

    ``labels`` holds class indices into ``classes``. Classes without any
    sample are allowed; they are listed in :attr:`empty_classes` and
    downstream curve computations skip them.
    """

    classes: tuple
    labels: np.ndarray
    scores: np.ndarray

    def __post_init__(self):
        classes = tuple(
            c if isinstance(c, ClassLabel) else ClassLabel(str(c), i)
            for i, c in enumerate(self.classes)
        )
        if len(classes) < 2:
            raise ShapeError("at least two classes are required")
        names = [c.name for c in classes]
        if len(set(names)) != len(names):
            raise DataValidationError(f"duplicate class names: {names}")
        if [c.index for c in classes] != list(range(len(classes))):
            raise DataValidationError("class indices must be 0..k-1 in order")
        scores = check_scores(self.scores, n_classes=len(classes), min_samples=2)
        labels = check_labels(self.labels, scores.shape[0], len(classes))
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "scores", freeze(scores))
        object.__setattr__(self, "labels", freeze(labels))

    @classmethod
    def from_arrays(cls, labels, scores, class_names=None):
        scores = np.asarray(scores, dtype=np.float64)
        if class_names is None:
            class_names = [str(i) for i in range(scores.shape[1])]
        return cls(tuple(class_names), labels, scores)

    @property
    def n_samples(self):
        return self.scores.shape[0]

    @property
    def n_classes(self):
        return len(self.classes)

    @property
    def class_names(self):
        return [c.name for c in self.classes]

    @property
    def class_counts(self):
        return np.bincount(self.labels, minlength=self.n_classes)

    @property
    def empty_classes(self):
        """Indices of classes that no sample belongs to."""
        return [int(i) for i in np.flatnonzero(self.class_counts == 0)]

    @property
    def has_empty_classes(self):
        return bool(self.empty_classes)

    def take(self, rows):
        """Dataset restricted to (possibly repeated) row indices."""
        return EvaluationDataset(self.classes, self.labels[rows], self.scores[rows])

    def with_scores(self, scores):
        return EvaluationDataset(self.classes, self.labels, scores)

    def __eq__(self, other):
        if not isinstance(other, EvaluationDataset):
            return NotImplemented
        return (
            self.classes == other.classes
            and np.array_equal(self.labels, other.labels)
            and np.array_equal(self.scores, other.scores)
        )

    __hash__ = None


def to_indicator(dataset):
    """One-hot ``(n, k)`` matrix with a 1 at each sample's true class."""
    indicator = np.zeros((dataset.n_samples, dataset.n_classes), dtype=np.float64)
    indicator[np.arange(dataset.n_samples), dataset.labels] = 1.0
    return indicator


def class_frequencies(dataset):
    return dataset.class_counts / dataset.n_samples


def _parse_float(text, row, column):
    try:
        value = float(text)
    except ValueError:
        raise CsvParseError(f"non-numeric score {text!r}", row=row, column=column) from None
    if not math.isfinite(value):
        raise DataValidationError(
            f"non-finite score {text!r} at row {row}, column {column!r}"
        )
    return value


def load_dataset(path, label_column="label", score_columns=None, delimiter=","):
    """Read a score file into an :class:`EvaluationDataset`.

    Parameters
    ----------
    path : str or Path
        Delimited UTF-8 text file with a header row.
    label_column : str
        Name of the column holding the true class names.
    score_columns : list of str, optional
        Score columns in class order. Defaults to every ``score_<class>``
        column. A leading ``score_`` is stripped to obtain the class name.
    delimiter : str
        Field separator, ``","`` or ``"\\t"``.

    Row numbers in error messages are 1-based and count the header as row 1.
    """
    path = Path(path)
    try:
        handle = path.open(newline="", encoding="utf-8")
    except OSError as exc:
        raise InputSchemaError(f"cannot open {path}: {exc}") from exc
    with handle:
        reader = csv.reader(handle, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise InputSchemaError(f"{path} is empty") from None
        except UnicodeDecodeError as exc:
            raise CsvParseError(f"{path} is not valid UTF-8: {exc}") from None
        header = [h.strip() for h in header]
        if label_column not in header:
            raise InputSchemaError(f"label column {label_column!r} not found in {path}")
        if score_columns is None:
            score_columns = [h for h in header if h.startswith(SCORE_PREFIX)]
            if not score_columns:
                raise InputSchemaError(f"no {SCORE_PREFIX}<class> columns in {path}")
        else:
            score_columns = list(score_columns)
            missing = [c for c in score_columns if c not in header]
            if missing:
                raise InputSchemaError(f"score columns {missing} not found in {path}")
        class_names = [
            c[len(SCORE_PREFIX):] if c.startswith(SCORE_PREFIX) else c
            for c in score_columns
        ]
        lookup = {name: i for i, name in enumerate(class_names)}
        label_pos = header.index(label_column)
        score_pos = [header.index(c) for c in score_columns]

        labels, rows = [], []
        try:
            for row_number, record in enumerate(reader, start=2):
                if not record:
                    continue
                if len(record) != len(header):
                    raise CsvParseError(
                        f"expected {len(header)} fields, found {len(record)}",
                        row=row_number,
                    )
                for name, field in zip(header, record):
                    if field.strip() == "":
                        raise CsvParseError("empty field", row=row_number, column=name)
                label = record[label_pos].strip()
                if label not in lookup:
                    raise LabelVocabularyError(
                        f"label {label!r} at row {row_number} is not among the score "
                        f"classes {class_names}"
                    )
                labels.append(lookup[label])
                rows.append(
                    [
                        _parse_float(record[p].strip(), row_number, score_columns[j])
                        for j, p in enumerate(score_pos)
                    ]
                )
        except UnicodeDecodeError as exc:
            raise CsvParseError(f"{path} is not valid UTF-8: {exc}") from None
    if len(rows) < 2:
        raise InputSchemaError(f"{path} needs at least two data rows, found {len(rows)}")
    return EvaluationDataset(
        tuple(class_names),
        np.asarray(labels, dtype=np.int64),
        np.asarray(rows, dtype=np.float64),
    )


def write_dataset(dataset, path, label_column="label", delimiter=","):
    """Write ``dataset`` in the format read by :func:`load_dataset`.

    Floats are written in shortest round-trip form so reloading is exact.
    """
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, delimiter=delimiter, lineterminator="\n")
        writer.writerow([label_column] + [SCORE_PREFIX + n for n in dataset.class_names])
        names = dataset.class_names
        for label, row in zip(dataset.labels, dataset.scores):
            writer.writerow([names[label]] + [repr(float(v)) for v in row])
