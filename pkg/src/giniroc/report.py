"""JSON report assembly, canonical serialisation and curve CSV export."""

import csv
import datetime
import json
import math
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__
from .exceptions import DataValidationError, ReportWriteError

SCHEMA_VERSION = "1.0"

_number = {"type": "number"}
_nullable_number = {"type": ["number", "null"]}
_numbers = {"type": "array", "items": _number}
_matrix = {"type": "array", "items": _numbers}

_curve_schema = {
    "type": "object",
    "required": ["kind", "label", "empty", "auc", "fpr", "tpr", "thresholds"],
    "properties": {
        "kind": {"enum": ["per-class", "aggregated", "micro", "binary"]},
        "label": {"type": ["string", "null"]},
        "empty": {"type": "boolean"},
        "auc": {"type": ["number", "null"], "minimum": 0, "maximum": 1},
        "fpr": _numbers,
        "tpr": _numbers,
        "thresholds": {"type": "array", "items": _nullable_number},
        "weights": _numbers,
        "dropped": {"type": "array", "items": {"type": "integer"}},
    },
}

_unit = {"type": "number", "minimum": 0, "maximum": 1}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "giniroc evaluation report",
    "type": "object",
    "required": [
        "schema_version", "dataset", "whitening", "gini", "curves",
        "auc_table", "band", "provenance",
    ],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "dataset": {
            "type": "object",
            "required": ["n", "k", "classes", "frequencies", "class_counts", "empty_classes"],
            "properties": {
                "n": {"type": "integer", "minimum": 2},
                "k": {"type": "integer", "minimum": 2},
                "classes": {"type": "array", "items": {"type": "string"}},
                "frequencies": {"type": "array", "items": _unit},
                "class_counts": {"type": "array", "items": {"type": "integer"}},
                "empty_classes": {"type": "array", "items": {"type": "integer"}},
            },
        },
        "whitening": {
            "type": "object",
            "required": [
                "method", "ridge", "eigenvalue_floor", "n_floored", "residual",
                "degenerate_classes", "mean", "variances", "correlation", "matrix",
            ],
            "properties": {
                "method": {"const": "zca-cor"},
                "ridge": {"type": "number", "minimum": 0},
                "eigenvalue_floor": _number,
                "n_floored": {"type": "integer", "minimum": 0},
                "residual": {"type": "number", "minimum": 0},
                "degenerate_classes": {"type": "array", "items": {"type": "integer"}},
                "mean": _numbers,
                "variances": _numbers,
                "correlation": _matrix,
                "matrix": _matrix,
            },
        },
        "gini": {
            "type": "object",
            "required": ["per_class_gini", "whitened_means", "weights", "aggregate"],
            "properties": {
                "per_class_gini": _numbers,
                "whitened_means": _numbers,
                "weights": {"type": "array", "items": _unit},
                "aggregate": {"type": "number", "minimum": 0},
            },
        },
        "curves": {
            "type": "object",
            "required": ["per_class", "aggregated", "micro"],
            "properties": {
                "per_class": {"type": "array", "items": _curve_schema},
                "aggregated": _curve_schema,
                "micro": _curve_schema,
            },
        },
        "auc_table": {
            "type": "object",
            "required": [
                "gini_auc", "gini_index_auc", "macro_auc", "micro_auc", "m_measure",
                "per_class_auc", "excluded_classes", "skipped_pairs",
            ],
            "properties": {
                "gini_auc": _unit,
                "gini_index_auc": {"type": ["number", "null"], "minimum": 0, "maximum": 1},
                "macro_auc": _unit,
                "micro_auc": _unit,
                "m_measure": _unit,
                "per_class_auc": {
                    "type": "array",
                    "items": {"type": ["number", "null"], "minimum": 0, "maximum": 1},
                },
                "excluded_classes": {"type": "array", "items": {"type": "integer"}},
                "skipped_pairs": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "integer"}},
                },
            },
        },
        "band": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": [
                        "fpr_grid", "lower", "upper", "level", "replicates",
                        "auc_std_error", "attempts",
                    ],
                    "properties": {
                        "fpr_grid": {"type": "array", "items": _unit},
                        "lower": {"type": "array", "items": _unit},
                        "upper": {"type": "array", "items": _unit},
                        "level": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
                        "replicates": {"type": "integer", "minimum": 10},
                        "auc_std_error": {"type": "number", "minimum": 0},
                        "attempts": {"type": "integer"},
                    },
                },
            ]
        },
        "provenance": {
            "type": "object",
            "required": ["tool", "version", "seed", "config", "timestamp"],
            "properties": {
                "tool": {"const": "giniroc"},
                "version": {"type": "string"},
                "seed": {"type": "integer"},
                "config": {"type": "object"},
                "timestamp": {"type": "string"},
            },
        },
    },
}


def _floats(values):
    return [float(v) for v in np.ravel(values)]


def build_report(evaluation, config=None, seed=None, timestamp=None):
    """Collect an :class:`~giniroc.pipeline.Evaluation` into a JSON-ready dict.

    ``config`` is echoed verbatim under ``provenance.config``. ``timestamp``
    defaults to the current UTC time.
    """
    dataset = evaluation.dataset
    model = evaluation.whitening
    moments = model.moments
    decomposition = evaluation.decomposition
    config = dict(config or {})
    if seed is None:
        seed = config.get("seed", 42)
    if timestamp is None:
        timestamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    return {
        "schema_version": SCHEMA_VERSION,
        "dataset": {
            "n": int(dataset.n_samples),
            "k": int(dataset.n_classes),
            "classes": dataset.class_names,
            "frequencies": _floats(evaluation.frequencies),
            "class_counts": [int(c) for c in dataset.class_counts],
            "empty_classes": dataset.empty_classes,
        },
        "whitening": {
            "method": model.method,
            "ridge": float(model.ridge),
            "eigenvalue_floor": float(model.eigenvalue_floor),
            "n_floored": int(model.n_floored),
            "residual": model.whitening_residual(),
            "degenerate_classes": [int(i) for i in np.flatnonzero(moments.degenerate)],
            "mean": _floats(moments.mean),
            "variances": _floats(np.diag(moments.variances)),
            "correlation": [_floats(row) for row in moments.correlation],
            "matrix": [_floats(row) for row in model.matrix],
        },
        "gini": {
            "per_class_gini": _floats(decomposition.per_class_gini),
            "whitened_means": _floats(decomposition.whitened_means),
            "weights": _floats(decomposition.weights),
            "aggregate": float(decomposition.aggregate),
        },
        "curves": {
            "per_class": [c.to_dict() for c in evaluation.per_class],
            "aggregated": evaluation.aggregated.to_dict(),
            "micro": evaluation.micro.to_dict(),
        },
        "auc_table": evaluation.auc_table.to_dict(),
        "band": None if evaluation.band is None else evaluation.band.to_dict(),
        "provenance": {
            "tool": "giniroc",
            "version": __version__,
            "seed": int(seed),
            "config": config,
            "timestamp": timestamp,
        },
    }


def _check_finite(obj, path="$"):
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise DataValidationError(f"non-finite number {obj!r} at {path}")
    elif isinstance(obj, dict):
        for key, value in obj.items():
            _check_finite(value, f"{path}.{key}")
    elif isinstance(obj, (list, tuple)):
        for i, value in enumerate(obj):
            _check_finite(value, f"{path}[{i}]")


def validate_report(report):
    """Check finiteness and the JSON schema; raise DataValidationError otherwise."""
    _check_finite(report)
    try:
        jsonschema.validate(report, REPORT_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path)
        raise DataValidationError(f"report fails schema at '{where}': {exc.message}") from None


def _format_float(value):
    text = format(value, ".17g")
    if "." not in text and "e" not in text:
        text += ".0"
    return text


def _encode(obj, out):
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            raise DataValidationError(f"cannot serialise non-finite number {value!r}")
        out.append(_format_float(value))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                out.append(",")
            out.append(json.dumps(str(key), ensure_ascii=False))
            out.append(":")
            _encode(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _encode(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps_canonical(obj):
    """Sorted keys, 17 significant digit floats, no whitespace, trailing newline."""
    out = []
    _encode(obj, out)
    out.append("\n")
    return "".join(out)


def write_report(report, path):
    validate_report(report)
    text = dumps_canonical(report)
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ReportWriteError(f"cannot write report to {path}: {exc}") from exc


def read_report(path):
    with Path(path).open(encoding="utf-8") as handle:
        return json.load(handle)


def write_curve_csv(curve, path):
    """Write ``fpr,tpr,threshold`` rows; infinite thresholds as ``inf``/``-inf``."""
    path = Path(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["fpr", "tpr", "threshold"])
            for fpr, tpr, threshold in curve.points:
                writer.writerow([_format_float(fpr), _format_float(tpr), _format_threshold(threshold)])
    except OSError as exc:
        raise ReportWriteError(f"cannot write curve to {path}: {exc}") from exc


def _format_threshold(value):
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return _format_float(value)


def read_curve_csv(path):
    """Read a curve CSV back as three float arrays ``(fpr, tpr, thresholds)``."""
    with Path(path).open(newline="", encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    return tuple(
        np.array([float(r[col]) for r in rows]) for col in ("fpr", "tpr", "threshold")
    )
