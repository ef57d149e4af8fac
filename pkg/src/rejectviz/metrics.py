"""Classification metrics on confusion matrices and reject curves.

A reject curve plots a metric, evaluated on the accepted samples only,
against the acceptance rate: accuracy (ARC), per-class precision (PRC)
or per-class recall (RRC). Points where the metric denominator is
empty (class fully rejected, or no predictions of the class) carry the
value None instead of a fabricated number; renderers skip them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

from .core import ConfusionMatrix, PredictionSet, confusion_sweep


class MetricKind(enum.Enum):
    ACCURACY = "accuracy"
    PRECISION = "precision"
    RECALL = "recall"


@dataclass(frozen=True)
class MetricSpec:
    """A metric selection; precision/recall require a target class."""

    kind: MetricKind
    target_class: int | None = None

    def __post_init__(self):
        if self.kind is MetricKind.ACCURACY:
            if self.target_class is not None:
                raise ValueError("accuracy takes no target class")
        elif self.target_class is None:
            raise ValueError(f"{self.kind.value} requires a target class")
        elif self.target_class < 1:
            raise ValueError(f"target class must be >= 1, got {self.target_class}")

    @property
    def key(self) -> str:
        """Machine label, e.g. "accuracy" or "precision_2"."""
        if self.kind is MetricKind.ACCURACY:
            return "accuracy"
        return f"{self.kind.value}_{self.target_class}"

    @property
    def label(self) -> str:
        """Human label for legends."""
        if self.kind is MetricKind.ACCURACY:
            return "accuracy"
        return f"{self.kind.value} (class {self.target_class})"


class CurvePoint(NamedTuple):
    acceptance_rate: float
    value: float | None


@dataclass(frozen=True)
class RejectCurve:
    """Metric values over strictly decreasing acceptance rates."""

    points: tuple[CurvePoint, ...]
    metric: MetricSpec

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(CurvePoint(*p) for p in self.points))
        rates = [p.acceptance_rate for p in self.points]
        if any(b >= a for a, b in zip(rates, rates[1:])):
            raise ValueError("acceptance rates must be strictly decreasing")
        for p in self.points:
            if not 0 < p.acceptance_rate <= 1:
                raise ValueError(f"acceptance rate out of (0, 1]: {p.acceptance_rate}")
            if p.value is not None and not 0 <= p.value <= 1:
                raise ValueError(f"metric value out of [0, 1]: {p.value}")


def accuracy(cm: ConfusionMatrix) -> float:
    """Correct fraction among accepted samples; raises when empty."""
    total = cm.total
    if total == 0:
        raise ValueError("no accepted samples")
    return cm.trace / total


def precision(cm: ConfusionMatrix, c: int) -> float | None:
    """TP / predicted-positive for class c; None when the column is empty."""
    denom = cm.col_total(c)
    if denom == 0:
        return None
    return cm.count(c, c) / denom


def recall(cm: ConfusionMatrix, c: int) -> float | None:
    """TP / actual-positive for class c; None when the class is fully rejected."""
    denom = cm.row_total(c)
    if denom == 0:
        return None
    return cm.count(c, c) / denom


def evaluate(metric: MetricSpec, cm: ConfusionMatrix) -> float | None:
    if metric.kind is MetricKind.ACCURACY:
        return accuracy(cm)
    if metric.kind is MetricKind.PRECISION:
        return precision(cm, metric.target_class)
    return recall(cm, metric.target_class)


def reject_curve(preds: PredictionSet, metric: MetricSpec) -> RejectCurve:
    """One point per schedule threshold, ordered by decreasing acceptance rate.

    Rates and defined values are exact integer ratios of the underlying
    counts, so they can be compared for equality against an independent
    per-threshold recount.
    """
    if metric.target_class is not None and metric.target_class > preds.num_classes:
        raise ValueError(f"target class {metric.target_class} out of range 1..{preds.num_classes}")
    n = len(preds)
    points = []
    for _, cm in confusion_sweep(preds):
        points.append(CurvePoint(cm.total / n, evaluate(metric, cm)))
    return RejectCurve(tuple(points), metric)
