"""Confusion stacks: the full confusion matrix over the acceptance sweep.

Instead of collapsing the accepted samples into a single metric, a
confusion stack keeps every confusion cell and stacks their counts on
top of each other, one column per realizable acceptance rate. Options
control the presentation without ever changing the counts:

* order: NATURAL keeps the row-major matrix reading order; CORRECT_LAST
  puts all wrong cells below all correct cells, making the
  correct/wrong border a single contiguous line.
* normalize: divide each column by its accepted count, so the column
  total is 1 and the correct block equals the accuracy at that rate.
* align: BOTTOM stacks from y=0 upward; CORRECT_START shifts each
  column down by its wrong total, so correct cells occupy the positive
  axis and wrong cells the negative axis; CORRECT_CENTER centers the
  correct block on 0. Both require CORRECT_LAST order.
* condense_errors: merge all errors of each true class into a single
  "other" cell, keeping multi-class stacks readable.

Cell sizes depend only on the counts and the normalize flag; order and
align move cells around but never resize them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .core import ConfusionMatrix, PredictionSet, confusion_sweep

OTHER = "other"
"""Predicted-class marker of a condensed error cell."""


class CellId(NamedTuple):
    """One confusion cell: true class and predicted class (or OTHER)."""

    true_class: int
    predicted_class: int | str

    @property
    def is_correct(self) -> bool:
        return self.true_class == self.predicted_class

    @property
    def label(self) -> str:
        """Legend label, e.g. "confusion_1_2" or "confusion_1_other"."""
        return f"confusion_{self.true_class}_{self.predicted_class}"


class Order(enum.Enum):
    NATURAL = "natural"
    CORRECT_LAST = "correct_last"


class Align(enum.Enum):
    BOTTOM = "bottom"
    CORRECT_START = "correct_start"
    CORRECT_CENTER = "correct_center"


@dataclass(frozen=True)
class StackOptions:
    order: Order = Order.NATURAL
    normalize: bool = False
    align: Align = Align.BOTTOM
    condense_errors: bool = False

    def __post_init__(self):
        if self.align is not Align.BOTTOM and self.order is not Order.CORRECT_LAST:
            raise ValueError(
                f"align={self.align.value} requires order=correct_last "
                "(the correct/wrong border must be contiguous)"
            )

    def to_jsonable(self) -> dict:
        return {
            "order": self.order.value,
            "normalize": self.normalize,
            "align": self.align.value,
            "condense_errors": self.condense_errors,
        }


class StackCell(NamedTuple):
    """A cell's integer count and its drawn size (count, or count/accepted)."""

    cell: CellId
    count: int
    size: float


@dataclass(frozen=True)
class StackColumn:
    """One schedule point: the stacked cells plus the baseline offset.

    Cells are drawn bottom-up starting at baseline_offset; cell i spans
    [baseline + sum(sizes[:i]), baseline + sum(sizes[:i+1])].
    """

    acceptance_rate: float
    accepted_count: int
    cells: tuple[StackCell, ...]
    baseline_offset: float

    @property
    def correct_count(self) -> int:
        return sum(c.count for c in self.cells if c.cell.is_correct)

    @property
    def wrong_count(self) -> int:
        return sum(c.count for c in self.cells if not c.cell.is_correct)

    def boundaries(self) -> tuple[float, ...]:
        """The len(cells)+1 stacking boundaries, bottom to top."""
        out = [self.baseline_offset]
        for c in self.cells:
            out.append(out[-1] + c.size)
        return tuple(out)


@dataclass(frozen=True)
class ConfusionStack:
    """Columns over decreasing acceptance rate; identical cell order in each."""

    columns: tuple[StackColumn, ...]
    normalized: bool
    options: StackOptions

    def __post_init__(self):
        if len(self.columns) == 0:
            raise ValueError("stack must have at least one column")
        first = tuple(c.cell for c in self.columns[0].cells)
        for col in self.columns[1:]:
            if tuple(c.cell for c in col.cells) != first:
                raise ValueError("every column must list the same cells in the same order")

    @property
    def cell_ids(self) -> tuple[CellId, ...]:
        return tuple(c.cell for c in self.columns[0].cells)

    def correct_spans(self) -> tuple[float, ...]:
        """Size of the correct block per column, as an exact count ratio.

        With normalize=True this equals the accuracy of the accepted
        subset at each schedule point, the same integer ratio the ARC
        reports.
        """
        if self.normalized:
            return tuple(col.correct_count / col.accepted_count for col in self.columns)
        return tuple(float(col.correct_count) for col in self.columns)

    def to_jsonable(self) -> dict:
        """Columnar document: see the CLI docs for the exact schema."""
        return {
            "columns": [
                {
                    "acceptance_rate": col.acceptance_rate,
                    "baseline": col.baseline_offset,
                    "cells": [
                        {
                            "true": c.cell.true_class,
                            "pred": c.cell.predicted_class,
                            "count": c.count,
                            "size": c.size,
                        }
                        for c in col.cells
                    ],
                }
                for col in self.columns
            ],
            "normalized": self.normalized,
            "options": self.options.to_jsonable(),
        }


def order_cells(num_classes: int, order: Order, condensed: bool) -> tuple[CellId, ...]:
    """The cell sequence every column follows, bottom to top.

    NATURAL is the row-major matrix reading order (true class, then
    predicted class ascending; for condensed stacks correct before
    "other" within each true class). CORRECT_LAST lists all wrong cells
    first, then all correct cells, each group ascending by true class
    and then predicted class.
    """
    if num_classes < 2:
        raise ValueError(f"num_classes must be >= 2, got {num_classes}")
    classes = range(1, num_classes + 1)
    if condensed:
        wrong = [CellId(t, OTHER) for t in classes]
        if order is Order.NATURAL:
            return tuple(c for t in classes for c in (CellId(t, t), CellId(t, OTHER)))
    else:
        wrong = [CellId(t, p) for t in classes for p in classes if p != t]
        if order is Order.NATURAL:
            return tuple(CellId(t, p) for t in classes for p in classes)
    correct = [CellId(t, t) for t in classes]
    return tuple(wrong + correct)


def condense(cm: ConfusionMatrix) -> tuple[tuple[CellId, int], ...]:
    """Merge each true class's errors into one (t, OTHER) cell.

    Correct counts are untouched and per-true-class totals conserved.
    """
    if cm.num_classes < 2:
        raise ValueError("condensing needs at least 2 classes")
    out = []
    for t in range(1, cm.num_classes + 1):
        correct = cm.count(t, t)
        out.append((CellId(t, t), correct))
        out.append((CellId(t, OTHER), cm.row_total(t) - correct))
    return tuple(out)


def align_baseline(cells: Sequence[StackCell], align: Align) -> float:
    """Bottom position of a column's stack for the given alignment.

    CORRECT_START puts the wrong block entirely below 0 so the positive
    axis carries the correct count (or, normalized, the accuracy);
    CORRECT_CENTER additionally centers the correct block on 0. Both
    assume the cells are in CORRECT_LAST order.
    """
    if align is Align.BOTTOM:
        return 0.0
    wrong = sum(c.size for c in cells if not c.cell.is_correct)
    if align is Align.CORRECT_START:
        return -wrong
    correct = sum(c.size for c in cells if c.cell.is_correct)
    return -wrong - correct / 2


def build_stack(preds: PredictionSet, options: StackOptions) -> ConfusionStack:
    """Confusion stack over every schedule point of the prediction set.

    One column per distinct certainty value, ordered by decreasing
    acceptance rate; cell counts come from the confusion matrix of the
    accepted subset at that threshold (condensed per options), sizes
    are the counts or, normalized, exact count/accepted ratios.
    """
    if len(preds) == 0:
        raise ValueError("cannot stack an empty prediction set")
    cell_order = order_cells(preds.num_classes, options.order, options.condense_errors)
    n = len(preds)
    columns = []
    for _, cm in confusion_sweep(preds):
        if options.condense_errors:
            counts = dict(condense(cm))
        else:
            counts = {
                CellId(t, p): cm.count(t, p)
                for t in range(1, cm.num_classes + 1)
                for p in range(1, cm.num_classes + 1)
            }
        accepted = cm.total
        cells = tuple(
            StackCell(
                cell,
                counts[cell],
                counts[cell] / accepted if options.normalize else float(counts[cell]),
            )
            for cell in cell_order
        )
        columns.append(
            StackColumn(
                acceptance_rate=accepted / n,
                accepted_count=accepted,
                cells=cells,
                baseline_offset=align_baseline(cells, options.align),
            )
        )
    return ConfusionStack(tuple(columns), options.normalize, options)
