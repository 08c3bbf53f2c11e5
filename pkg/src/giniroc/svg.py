"""Self-contained SVG rendering of ROC curves and bar charts.

Curves are drawn inside a group whose transform maps the unit square onto
the plot area, so polyline coordinates are the raw ``(fpr, tpr)`` values.
"""

from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .exceptions import DataValidationError, ReportWriteError, ShapeError

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)
AGGREGATED_COLOR = "#000000"

_LEFT, _TOP, _SIZE = 60, 40, 360


def _num(value):
    return format(float(value), ".6g")


def _points(xs, ys):
    return " ".join(f"{_num(x)},{_num(y)}" for x, y in zip(xs, ys))


def _simplify(xs, ys):
    """Drop interior vertices of vertical and horizontal runs; the drawing is unchanged."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.size < 3:
        return xs, ys
    same_x = (xs[1:-1] == xs[:-2]) & (xs[1:-1] == xs[2:])
    same_y = (ys[1:-1] == ys[:-2]) & (ys[1:-1] == ys[2:])
    keep = np.r_[True, ~(same_x | same_y), True]
    return xs[keep], ys[keep]


def _write(path, parts):
    path = Path(path)
    try:
        path.write_text("\n".join(parts) + "\n", encoding="utf-8")
    except OSError as exc:
        raise ReportWriteError(f"cannot write {path}: {exc}") from exc


def _header(width, height, title):
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    if title:
        parts.append(
            f'<text x="{width / 2:g}" y="22" text-anchor="middle" font-family="sans-serif" '
            f'font-size="15">{escape(title)}</text>'
        )
    return parts


def _axes(label_x, label_y):
    right, bottom = _LEFT + _SIZE, _TOP + _SIZE
    parts = [
        f'<rect x="{_LEFT}" y="{_TOP}" width="{_SIZE}" height="{_SIZE}" fill="none" '
        'stroke="#333333" stroke-width="1"/>'
    ]
    for tick in np.linspace(0.0, 1.0, 5):
        x = _LEFT + tick * _SIZE
        y = bottom - tick * _SIZE
        parts.append(
            f'<text x="{x:g}" y="{bottom + 16}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="11">{tick:.2f}</text>'
        )
        parts.append(
            f'<text x="{_LEFT - 6}" y="{y + 4:g}" text-anchor="end" font-family="sans-serif" '
            f'font-size="11">{tick:.2f}</text>'
        )
    parts.append(
        f'<text x="{_LEFT + _SIZE / 2:g}" y="{bottom + 34}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{escape(label_x)}</text>'
    )
    parts.append(
        f'<text x="16" y="{_TOP + _SIZE / 2:g}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="12" transform="rotate(-90 16 {_TOP + _SIZE / 2:g})">{escape(label_y)}</text>'
    )
    return parts, right


def render_curve_plot(curves, path, band=None, title=None):
    """ROC curves over the unit square, with an optional shaded band.

    Parameters
    ----------
    curves : list of RocCurve
        Empty curves are skipped. Aggregated curves are drawn thick and black.
    path : str or Path
    band : ConfidenceBand, optional
    title : str, optional
    """
    if not curves:
        raise ShapeError("at least one curve is required")
    width, height = _LEFT + _SIZE + 220, _TOP + _SIZE + 50
    parts = _header(width, height, title)
    axes, right = _axes("False positive rate", "True positive rate")
    parts += axes
    parts.append(
        f'<g id="plot" transform="translate({_LEFT},{_TOP + _SIZE}) scale({_SIZE},-{_SIZE})">'
    )
    parts.append(
        '<line class="chance" x1="0" y1="0" x2="1" y2="1" stroke="#999999" '
        'stroke-dasharray="4 3" stroke-width="1" vector-effect="non-scaling-stroke"/>'
    )
    if band is not None:
        xs = np.r_[band.fpr_grid, band.fpr_grid[::-1]]
        ys = np.r_[band.upper, band.lower[::-1]]
        parts.append(
            f'<polygon class="band" points="{_points(xs, ys)}" fill="#888888" '
            'fill-opacity="0.3" stroke="none"/>'
        )
    legend = []
    colour_index = 0
    for curve in curves:
        if curve.empty:
            continue
        if curve.kind == "aggregated":
            colour, stroke = AGGREGATED_COLOR, 2.5
        else:
            colour, stroke = PALETTE[colour_index % len(PALETTE)], 1.2
            colour_index += 1
        name = curve.label if curve.label is not None else curve.kind
        parts.append(
            f'<polyline class="curve" data-label={quoteattr(str(name))} '
            f'points="{_points(*_simplify(curve.fpr, curve.tpr))}" fill="none" stroke="{colour}" '
            f'stroke-width="{stroke}" vector-effect="non-scaling-stroke"/>'
        )
        legend.append((f"{name} (AUC {curve.auc:.3f})", colour))
    parts.append("</g>")
    for i, (text, colour) in enumerate(legend):
        y = _TOP + 10 + 18 * i
        parts.append(
            f'<line x1="{right + 16}" y1="{y}" x2="{right + 36}" y2="{y}" stroke="{colour}" '
            'stroke-width="2"/>'
        )
        parts.append(
            f'<text class="legend" x="{right + 42}" y="{y + 4}" font-family="sans-serif" '
            f'font-size="11">{escape(text)}</text>'
        )
    parts.append("</svg>")
    _write(path, parts)


def render_bar_chart(labels, values, path, title=None, ylabel=None):
    """Vertical bar chart; bar heights are proportional to ``values``."""
    values = np.asarray(values, dtype=np.float64)
    labels = [str(v) for v in labels]
    if values.ndim != 1 or len(labels) != values.shape[0]:
        raise ShapeError("labels and values must have the same length")
    if not np.all(np.isfinite(values)) or np.any(values < 0):
        raise DataValidationError("bar values must be finite and nonnegative")
    n = len(labels)
    slot = max(28.0, 480.0 / max(n, 1))
    plot_width = slot * n
    width, height = int(_LEFT + plot_width + 30), _TOP + _SIZE + 70
    bottom = _TOP + _SIZE
    top_value = values.max() if n and values.max() > 0 else 1.0
    parts = _header(width, height, title)
    parts.append(
        f'<line x1="{_LEFT}" y1="{bottom}" x2="{_LEFT + plot_width:g}" y2="{bottom}" '
        'stroke="#333333" stroke-width="1"/>'
    )
    if ylabel:
        parts.append(
            f'<text x="16" y="{_TOP + _SIZE / 2:g}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="12" transform="rotate(-90 16 {_TOP + _SIZE / 2:g})">{escape(ylabel)}</text>'
        )
    for i, (label, value) in enumerate(zip(labels, values)):
        bar_height = _SIZE * value / top_value
        x = _LEFT + i * slot + 0.15 * slot
        parts.append(
            f'<rect class="bar" data-label={quoteattr(label)} data-value="{value:.17g}" '
            f'x="{x:g}" y="{bottom - bar_height:.6f}" width="{0.7 * slot:g}" '
            f'height="{bar_height:.6f}" fill="{PALETTE[0]}"/>'
        )
        centre = x + 0.35 * slot
        parts.append(
            f'<text x="{centre:g}" y="{bottom - bar_height - 4:.3f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{value:.3g}</text>'
        )
        parts.append(
            f'<text x="{centre:g}" y="{bottom + 14}" text-anchor="end" font-family="sans-serif" '
            f'font-size="10" transform="rotate(-45 {centre:g} {bottom + 14})">{escape(label)}</text>'
        )
    parts.append("</svg>")
    _write(path, parts)
