"""Command line interface.

Subcommands: ``evaluate``, ``compare``, ``bootstrap`` and ``version``.
Exit status is 0 on success, 1 on runtime or numerical failure and 2 on
invalid input or configuration.
"""

import argparse
import csv
import json
import re
import sys
import traceback
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from . import __version__
from .dataset import load_dataset
from .exceptions import ComparabilityError, ConfigError, GiniRocError
from .pipeline import evaluate
from .report import build_report, write_curve_csv, write_report
from .roc import ALIGNMENTS, DEFAULT_GRID_SIZE
from .svg import render_bar_chart, render_curve_plot
from .whitening import DEFAULT_RIDGE

EXIT_OK, EXIT_RUNTIME, EXIT_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    """Every setting of one run, with all defaults materialised."""

    inputs: list
    label_col: str = "label"
    score_cols: list = None
    delimiter: str = ","
    grid_size: int = DEFAULT_GRID_SIZE
    ridge: float = DEFAULT_RIDGE
    alignment: str = "fpr"
    bootstrap: bool = False
    replicates: int = 1000
    level: float = 0.95
    seed: int = 42
    out_dir: str = "giniroc-out"
    plots: bool = True
    names: list = None

    def validate(self):
        if not self.inputs:
            raise ConfigError("at least one input file is required")
        if int(self.grid_size) != self.grid_size or self.grid_size < 2:
            raise ConfigError(f"--grid-size must be an integer >= 2, got {self.grid_size}")
        if not np.isfinite(self.ridge) or self.ridge < 0:
            raise ConfigError(f"--ridge must be a nonnegative number, got {self.ridge}")
        if self.alignment not in ALIGNMENTS:
            raise ConfigError(f"--alignment must be one of {ALIGNMENTS}")
        if self.bootstrap:
            if int(self.replicates) != self.replicates or self.replicates < 10:
                raise ConfigError(f"--replicates must be an integer >= 10, got {self.replicates}")
            if not 0.0 < self.level < 1.0:
                raise ConfigError(f"--level must lie in (0, 1), got {self.level}")
        if self.names is not None and len(self.names) != len(self.inputs):
            raise ConfigError("--names needs one name per --input")
        return self

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


def _safe_name(text):
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", text).strip("_") or "class"


def _stage_of(exc):
    """Name of the innermost package module the exception passed through."""
    stage = "cli"
    tb = exc.__traceback__
    while tb is not None:
        module = tb.tb_frame.f_globals.get("__name__", "")
        if module.startswith("giniroc."):
            stage = module.split(".", 1)[1]
        tb = tb.tb_next
    return stage


def _load(config, path):
    return load_dataset(
        path,
        label_column=config.label_col,
        score_columns=config.score_cols,
        delimiter=config.delimiter,
    )


def _bootstrap_settings(config):
    if not config.bootstrap:
        return None
    return {"replicates": int(config.replicates), "level": config.level, "seed": config.seed}


def run_pipeline(config, dataset, timestamp=None):
    """Evaluation and report for one dataset under ``config``."""
    result = evaluate(
        dataset,
        grid_size=int(config.grid_size),
        ridge=config.ridge,
        alignment=config.alignment,
        bootstrap=_bootstrap_settings(config),
    )
    report = build_report(result, config=config.to_dict(), seed=config.seed, timestamp=timestamp)
    return result, report


def write_outputs(result, report, out_dir, plots):
    out_dir = Path(out_dir)
    curve_dir = out_dir / "curves"
    curve_dir.mkdir(parents=True, exist_ok=True)
    write_report(report, out_dir / "report.json")
    for i, curve in enumerate(result.per_class):
        if not curve.empty:
            write_curve_csv(curve, curve_dir / f"class_{i:02d}_{_safe_name(curve.label)}.csv")
    write_curve_csv(result.aggregated, curve_dir / "aggregated.csv")
    write_curve_csv(result.micro, curve_dir / "micro.csv")
    if plots:
        names = result.dataset.class_names
        render_bar_chart(
            names, result.frequencies, out_dir / "frequencies.svg",
            title="Class frequencies", ylabel="Proportion",
        )
        render_bar_chart(
            names, result.decomposition.weights, out_dir / "weights.svg",
            title="Gini weights", ylabel="Weight",
        )
        render_curve_plot(
            [result.aggregated], out_dir / "roc_aggregated.svg", band=result.band,
            title="Multiclass ROC curve",
        )
        render_curve_plot(
            list(result.per_class) + [result.aggregated], out_dir / "roc_per_class.svg",
            title="Per-class and multiclass ROC curves",
        )


def format_auc_table(result):
    table = result.auc_table
    index_auc = "n/a" if table.gini_index_auc is None else f"{table.gini_index_auc:.4f}"
    rows = [
        ("Gini AUC", f"{table.gini_auc:.4f}"),
        ("Gini index AUC", index_auc),
        ("Macro AUC", f"{table.macro_auc:.4f}"),
        ("Micro AUC", f"{table.micro_auc:.4f}"),
        ("M-measure", f"{table.m_measure:.4f}"),
    ]
    if result.band is not None:
        rows.append(("Gini AUC std. error", f"{result.band.auc_std_error:.4f}"))
    for name, auc, weight in zip(
        result.dataset.class_names, table.per_class_auc, result.decomposition.weights
    ):
        auc_text = "empty" if np.isnan(auc) else f"{auc:.4f}"
        rows.append((f"  {name}", f"{auc_text}  (weight {weight:.4f})"))
    width = max(len(r[0]) for r in rows)
    lines = [f"{'Metric'.ljust(width)}  Value"]
    lines += [f"{label.ljust(width)}  {value}" for label, value in rows]
    return "\n".join(lines)


def cmd_evaluate(config, out=None):
    out = out or sys.stdout
    config.validate()
    if len(config.inputs) != 1:
        raise ConfigError("evaluate takes exactly one --input; use compare for several")
    dataset = _load(config, config.inputs[0])
    result, report = run_pipeline(config, dataset)
    write_outputs(result, report, config.out_dir, config.plots)
    print(format_auc_table(result), file=out)
    return EXIT_OK


def cmd_bootstrap(config, out=None):
    config.bootstrap = True
    return cmd_evaluate(config, out=out)


def _model_names(config):
    if config.names is not None:
        names = list(config.names)
    else:
        names = [Path(p).stem for p in config.inputs]
    seen = {}
    unique = []
    for name in names:
        name = _safe_name(name)
        seen[name] = seen.get(name, 0) + 1
        unique.append(name if seen[name] == 1 else f"{name}_{seen[name]}")
    return unique


def cmd_compare(config, out=None):
    out = out or sys.stdout
    config.validate()
    if len(config.inputs) < 2:
        raise ConfigError("compare needs at least two --input files")
    datasets = [_load(config, p) for p in config.inputs]
    reference = datasets[0]
    for path, dataset in zip(config.inputs[1:], datasets[1:]):
        if dataset.class_names != reference.class_names:
            raise ComparabilityError(
                f"{path} has classes {dataset.class_names}, expected {reference.class_names}"
            )
        if dataset.n_samples != reference.n_samples:
            raise ComparabilityError(
                f"{path} has {dataset.n_samples} samples, expected {reference.n_samples}"
            )
        if not np.array_equal(dataset.labels, reference.labels):
            raise ComparabilityError(f"{path} has different true labels than {config.inputs[0]}")
    names = _model_names(config)
    rows = []
    for name, dataset in zip(names, datasets):
        result, report = run_pipeline(config, dataset)
        write_outputs(result, report, Path(config.out_dir) / name, config.plots)
        rows.append((name, result.auc_table.as_row()))
    columns = ["gini_auc", "macro_auc", "micro_auc", "m_measure"]
    Path(config.out_dir).mkdir(parents=True, exist_ok=True)
    with (Path(config.out_dir) / "comparison.csv").open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["model"] + columns)
        for name, row in rows:
            writer.writerow([name] + [format(row[c], ".17g") for c in columns])
    width = max(len("Model"), *(len(n) for n, _ in rows))
    headers = ["Gini AUC", "Macro AUC", "Micro AUC", "M-measure"]
    print("  ".join(["Model".ljust(width)] + [h.rjust(9) for h in headers]), file=out)
    for name, row in rows:
        print("  ".join([name.ljust(width)] + [f"{row[c]:9.4f}" for c in columns]), file=out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="giniroc",
        description="Gini-weighted multiclass ROC analysis of classifier scores.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", dest="inputs", metavar="PATH",
                        help="score file (repeat for compare)")
    common.add_argument("--config", metavar="PATH",
                        help="JSON run config, or a report whose provenance.config is reused")
    common.add_argument("--label-col", help="label column name (default: label)")
    common.add_argument("--score-cols", help="comma-separated score columns in class order")
    common.add_argument("--delimiter", choices=[",", "tab"], help="field separator (default: ,)")
    common.add_argument("--grid-size", type=int, help=f"sweep points (default: {DEFAULT_GRID_SIZE})")
    common.add_argument("--ridge", type=float, help=f"correlation ridge (default: {DEFAULT_RIDGE})")
    common.add_argument("--alignment", choices=ALIGNMENTS,
                        help="match classes at equal FPR or equal raw score (default: fpr)")
    common.add_argument("--bootstrap", action="store_true", default=None,
                        help="compute a bootstrap confidence band")
    common.add_argument("--replicates", type=int, help="bootstrap replicates (default: 1000)")
    common.add_argument("--level", type=float, help="band level (default: 0.95)")
    common.add_argument("--seed", type=int, help="bootstrap seed (default: 42)")
    common.add_argument("--out-dir", help="output directory (default: giniroc-out)")
    common.add_argument("--plots", action=argparse.BooleanOptionalAction, default=None,
                        help="write SVG plots (default: on)")
    common.add_argument("--names", help="comma-separated model names for compare")

    sub.add_parser("evaluate", parents=[common], help="evaluate one score file")
    sub.add_parser("compare", parents=[common], help="compare several models on the same labels")
    sub.add_parser("bootstrap", parents=[common], help="evaluate with a bootstrap band")
    sub.add_parser("version", help="print the version")
    return parser


def config_from_args(args):
    data = {}
    if args.config:
        try:
            loaded = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if "provenance" in loaded:
            loaded = loaded["provenance"]["config"]
        data.update(loaded)
    overrides = {
        "inputs": args.inputs,
        "label_col": args.label_col,
        "score_cols": args.score_cols.split(",") if args.score_cols else None,
        "delimiter": {"tab": "\t", ",": ","}.get(args.delimiter),
        "grid_size": args.grid_size,
        "ridge": args.ridge,
        "alignment": args.alignment,
        "bootstrap": args.bootstrap,
        "replicates": args.replicates,
        "level": args.level,
        "seed": args.seed,
        "out_dir": args.out_dir,
        "plots": args.plots,
        "names": args.names.split(",") if args.names else None,
    }
    data.update({k: v for k, v in overrides.items() if v is not None})
    if "inputs" not in data:
        raise ConfigError("--input is required")
    return RunConfig.from_dict(data)


COMMANDS = {"evaluate": cmd_evaluate, "compare": cmd_compare, "bootstrap": cmd_bootstrap}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "version":
        print(f"giniroc {__version__}")
        return EXIT_OK
    try:
        config = config_from_args(args)
        return COMMANDS[args.command](config)
    except GiniRocError as exc:
        print(f"giniroc: {_stage_of(exc)}: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, TypeError) as exc:
        print(f"giniroc: {_stage_of(exc)}: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        traceback.print_exc(file=sys.stderr)
        print(f"giniroc: {_stage_of(exc)}: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
