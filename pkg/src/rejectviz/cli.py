"""Command-line front end and file formats.

Subcommands:

* ``curves``  reject curves as SVG plus a CSV of (acceptance_rate,
  metric, value) rows
* ``stack``   stacked confusion chart as SVG plus the columnar stack
  JSON document
* ``pie``     radial variant (requires a normalized, correct-last,
  correct-centered stack) as SVG plus the stack JSON
* ``table``   per-threshold confusion matrices as CSV
* ``paper-figures``  the six-figure demo set from the embedded mixture

Input is either a prediction CSV (``--input``) with the exact header
``true,pred,certainty`` (1-based integer classes, non-negative
certainty) or a synthetic dataset (``--seed``, optionally ``--mixture``
pointing at a mixture JSON document; default is the embedded mixture).

Stack JSON schema::

    {"columns": [{"acceptance_rate": float, "baseline": float,
                  "cells": [{"true": int, "pred": int | "other",
                             "count": int, "size": float}, ...]},
                 ...],
     "normalized": bool,
     "options": {"order": str, "normalize": bool, "align": str,
                 "condense_errors": bool}}

Metric CSV values are printed with 9 significant digits; prediction
CSV exports keep full float precision so they re-ingest identically.
Files are written to a temp file and atomically renamed, so failed
runs never leave partial output. Exit codes: 0 success, 1 input error,
2 internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .core import LabeledPrediction, PredictionSet, confusion_sweep
from .metrics import MetricKind, MetricSpec, reject_curve
from .render import PIE_STYLE, ChartStyle, render_curves, render_pie, render_stack
from .stack import Align, Order, StackOptions, build_stack
from .synth import bayes_predictions, default_mixture, load_mixture

CSV_HEADER = ["true", "pred", "certainty"]


class InputError(ValueError):
    """Bad user input: malformed file, flag conflict, unreadable path."""


def _g9(v: float) -> str:
    return f"{v:.9g}"


def ingest_csv(path: str | Path, num_classes: int | None = None) -> PredictionSet:
    """Parse a prediction CSV; diagnostics carry the offending line number.

    The class count is the maximum observed class id unless overridden
    (the override must cover every observed id).
    """
    path = Path(path)
    if not path.exists():
        raise InputError(f"{path}: no such file")
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise InputError(f"{path}: empty file")
        if [h.strip().lower() for h in header] != CSV_HEADER:
            raise InputError(f"{path}: line 1: expected header 'true,pred,certainty'")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise InputError(f"{path}: line {lineno}: expected 3 fields, got {len(row)}")
            try:
                t = int(row[0])
                p = int(row[1])
            except ValueError:
                raise InputError(f"{path}: line {lineno}: class ids must be integers") from None
            if t < 1 or p < 1:
                raise InputError(f"{path}: line {lineno}: class ids are 1-based, got {t},{p}")
            try:
                r = float(row[2])
            except ValueError:
                raise InputError(f"{path}: line {lineno}: certainty must be a number") from None
            if not math.isfinite(r) or r < 0:
                raise InputError(f"{path}: line {lineno}: certainty must be finite and >= 0, got {row[2]}")
            rows.append(LabeledPrediction(t, p, r))
    if not rows:
        raise InputError(f"{path}: no prediction rows")
    observed = max(max(p.true_class, p.predicted_class) for p in rows)
    if num_classes is None:
        num_classes = max(observed, 2)
    elif num_classes < observed:
        raise InputError(f"{path}: --classes {num_classes} smaller than max observed class id {observed}")
    return PredictionSet(tuple(rows), num_classes)


def write_predictions_csv(preds: PredictionSet, path: str | Path) -> None:
    """Export in the ingest format, full precision (round-trips exactly)."""
    lines = [",".join(CSV_HEADER)]
    for p in preds:
        lines.append(f"{p.true_class},{p.predicted_class},{p.certainty!r}")
    _write_atomic(Path(path), "\n".join(lines) + "\n")


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


@dataclass
class RunConfig:
    command: str
    input: Path | None = None
    seed: int | None = None
    mixture: Path | None = None
    classes: int | None = None
    metrics: tuple[str, ...] = ()
    order: Order = Order.NATURAL
    normalize: bool = False
    align: Align = Align.BOTTOM
    condense: bool = False
    out: Path = field(default_factory=lambda: Path("out.svg"))
    width: int | None = None
    height: int | None = None
    margin: int | None = None


def _load_predictions(cfg: RunConfig) -> PredictionSet:
    if cfg.input is not None and cfg.seed is not None:
        raise InputError("choose exactly one input source: --input or --seed")
    if cfg.input is not None:
        return ingest_csv(cfg.input, cfg.classes)
    if cfg.seed is not None:
        spec = load_mixture(cfg.mixture) if cfg.mixture else default_mixture()
        return bayes_predictions(spec, cfg.seed)
    if cfg.mixture is not None:
        raise InputError("--mixture needs --seed to draw a dataset")
    raise InputError("no input source: pass --input CSV or --seed N")


def _style(cfg: RunConfig, base: ChartStyle) -> ChartStyle:
    return ChartStyle(
        width=cfg.width or base.width,
        height=cfg.height or base.height,
        margin=cfg.margin or base.margin,
    )


def _metric_specs(names: tuple[str, ...], num_classes: int) -> list[MetricSpec]:
    """Expand metric names; precision/recall fan out over every class."""
    names = names or ("accuracy", "precision", "recall")
    specs = []
    for name in names:
        kind = MetricKind(name)
        if kind is MetricKind.ACCURACY:
            specs.append(MetricSpec(kind))
        else:
            specs.extend(MetricSpec(kind, c) for c in range(1, num_classes + 1))
    return specs


def _sibling(path: Path, suffix: str) -> Path:
    return path.with_suffix(suffix) if path.suffix != suffix else path


def cmd_curves(cfg: RunConfig) -> None:
    preds = _load_predictions(cfg)
    curves = [reject_curve(preds, m) for m in _metric_specs(cfg.metrics, preds.num_classes)]
    _write_atomic(cfg.out, render_curves(curves, _style(cfg, ChartStyle())))
    rows = ["acceptance_rate,metric,value"]
    for curve in curves:
        for p in curve.points:
            value = "" if p.value is None else _g9(p.value)
            rows.append(f"{_g9(p.acceptance_rate)},{curve.metric.key},{value}")
    _write_atomic(_sibling(cfg.out, ".csv"), "\n".join(rows) + "\n")


def _stack_options(cfg: RunConfig) -> StackOptions:
    try:
        return StackOptions(cfg.order, cfg.normalize, cfg.align, cfg.condense)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_stack(cfg: RunConfig) -> None:
    preds = _load_predictions(cfg)
    stack = build_stack(preds, _stack_options(cfg))
    _write_atomic(cfg.out, render_stack(stack, _style(cfg, ChartStyle())))
    _write_atomic(_sibling(cfg.out, ".json"), json.dumps(stack.to_jsonable(), indent=2) + "\n")


def cmd_pie(cfg: RunConfig) -> None:
    preds = _load_predictions(cfg)
    stack = build_stack(preds, _stack_options(cfg))
    try:
        svg = render_pie(stack, _style(cfg, PIE_STYLE))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write_atomic(cfg.out, svg)
    _write_atomic(_sibling(cfg.out, ".json"), json.dumps(stack.to_jsonable(), indent=2) + "\n")


def cmd_table(cfg: RunConfig) -> None:
    preds = _load_predictions(cfg)
    n = len(preds)
    rows = ["acceptance_rate,threshold,true_class,predicted_class,count"]
    for theta, cm in confusion_sweep(preds):
        rate = _g9(cm.total / n)
        for t in range(1, cm.num_classes + 1):
            for p in range(1, cm.num_classes + 1):
                rows.append(f"{rate},{_g9(theta)},{t},{p},{cm.count(t, p)}")
    _write_atomic(cfg.out, "\n".join(rows) + "\n")


def cmd_paper_figures(cfg: RunConfig) -> None:
    """Six demo figures from the embedded mixture at the given seed."""
    if cfg.seed is None:
        raise InputError("paper-figures requires --seed")
    preds = bayes_predictions(default_mixture(), cfg.seed)
    out = cfg.out
    out.mkdir(parents=True, exist_ok=True)

    curves = [reject_curve(preds, m) for m in _metric_specs((), preds.num_classes)]
    _write_atomic(out / "reject_curves.svg", render_curves(curves, title="Reject curves"))

    stacks = [
        ("stack_counts.svg", StackOptions(Order.NATURAL, False, Align.BOTTOM), "Confusion stack"),
        (
            "stack_correct_last.svg",
            StackOptions(Order.CORRECT_LAST, False, Align.BOTTOM),
            "Confusion stack, correct on top",
        ),
        (
            "stack_correct_start.svg",
            StackOptions(Order.CORRECT_LAST, False, Align.CORRECT_START),
            "Confusion stack, correct/wrong split",
        ),
        (
            "stack_normalized.svg",
            StackOptions(Order.CORRECT_LAST, True, Align.CORRECT_START),
            "Confusion stack, normalized split",
        ),
    ]
    for name, options, title in stacks:
        _write_atomic(out / name, render_stack(build_stack(preds, options), title=title))

    pie_stack = build_stack(preds, StackOptions(Order.CORRECT_LAST, True, Align.CORRECT_CENTER))
    _write_atomic(out / "pie.svg", render_pie(pie_stack, title="Confusion pie"))


_COMMANDS = {
    "curves": cmd_curves,
    "stack": cmd_stack,
    "pie": cmd_pie,
    "table": cmd_table,
    "paper-figures": cmd_paper_figures,
}


def run(cfg: RunConfig) -> int:
    """Execute a command; returns the process exit code."""
    try:
        _COMMANDS[cfg.command](cfg)
        return 0
    except (InputError, ValueError, OSError) as exc:
        print(f"rejectviz: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # internal error
        print(f"rejectviz: internal error: {exc}", file=sys.stderr)
        return 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage problems are input errors, exit code 1
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", type=Path, help="prediction CSV with header true,pred,certainty")
    p.add_argument("--seed", type=int, help="generate synthetic predictions with this seed")
    p.add_argument("--mixture", type=Path, help="mixture JSON (with --seed; default: embedded mixture)")
    p.add_argument("--classes", type=int, help="class count override for sparse CSVs")


def _add_style_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--width", type=int, help="canvas width in px")
    p.add_argument("--height", type=int, help="canvas height in px")
    p.add_argument("--margin", type=int, help="canvas margin in px")


def _add_stack_args(p: argparse.ArgumentParser, pie: bool) -> None:
    p.add_argument(
        "--order",
        choices=[o.value for o in Order],
        default=Order.CORRECT_LAST.value if pie else Order.NATURAL.value,
        help="cell stacking order",
    )
    p.add_argument(
        "--align",
        choices=[a.value for a in Align],
        default=Align.CORRECT_CENTER.value if pie else Align.BOTTOM.value,
        help="column baseline alignment",
    )
    if pie:
        p.add_argument(
            "--normalize",
            action=argparse.BooleanOptionalAction,
            default=True,
            help="divide each column by its accepted count",
        )
    else:
        p.add_argument(
            "--normalize", action="store_true", help="divide each column by its accepted count"
        )
    p.add_argument(
        "--condense",
        action="store_true",
        help="merge each true class's errors into one 'other' cell",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rejectviz", description="Evaluate classifiers with a global reject option.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curves", help="reject curves (SVG + CSV)")
    _add_input_args(p)
    _add_style_args(p)
    p.add_argument(
        "--metric",
        action="append",
        choices=[k.value for k in MetricKind],
        help="metric to plot (repeatable; default: all, per class)",
    )
    p.add_argument("--out", type=Path, required=True, help="output SVG path (CSV written alongside)")

    p = sub.add_parser("stack", help="stacked confusion chart (SVG + JSON)")
    _add_input_args(p)
    _add_style_args(p)
    _add_stack_args(p, pie=False)
    p.add_argument("--out", type=Path, required=True, help="output SVG path (JSON written alongside)")

    p = sub.add_parser("pie", help="radial stacked confusion chart (SVG + JSON)")
    _add_input_args(p)
    _add_style_args(p)
    _add_stack_args(p, pie=True)
    p.add_argument("--out", type=Path, required=True, help="output SVG path (JSON written alongside)")

    p = sub.add_parser("table", help="per-threshold confusion matrices (CSV)")
    _add_input_args(p)
    p.add_argument("--out", type=Path, required=True, help="output CSV path")

    p = sub.add_parser("paper-figures", help="render the six-figure demo set from the embedded mixture")
    p.add_argument("--seed", type=int, default=7, help="dataset seed (default: 7)")
    p.add_argument("--out", type=Path, required=True, help="output directory")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command, out=args.out)
    for name in ("input", "seed", "mixture", "classes", "width", "height", "margin", "condense", "normalize"):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    if getattr(args, "metric", None):
        cfg.metrics = tuple(args.metric)
    if hasattr(args, "order"):
        cfg.order = Order(args.order)
    if hasattr(args, "align"):
        cfg.align = Align(args.align)
    return cfg


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
