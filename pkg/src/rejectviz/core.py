"""Prediction data model and the global reject option.

A classifier run is a set of labeled predictions, each carrying a true
class, a predicted class (both 1-based) and a non-negative certainty.
A single global threshold theta accepts exactly the samples with
certainty >= theta; sweeping theta over the distinct certainty values
yields every realizable acceptance rate. Samples with equal certainty
are always accepted or rejected together.

All types are immutable value objects; all operations are pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import sweep


@dataclass(frozen=True, slots=True)
class LabeledPrediction:
    """One sample: true class, predicted class, certainty value."""

    true_class: int
    predicted_class: int
    certainty: float

    def __post_init__(self):
        if self.true_class < 1 or self.predicted_class < 1:
            raise ValueError(f"class ids are 1-based, got ({self.true_class}, {self.predicted_class})")
        if not (self.certainty >= 0):
            raise ValueError(f"certainty must be non-negative, got {self.certainty}")


@dataclass(frozen=True)
class PredictionSet:
    """An ordered collection of predictions over num_classes classes.

    May be empty only as the result of filtering (``accepted_subset``);
    the sweep/schedule/curve operations require a non-empty set and
    raise otherwise.
    """

    predictions: tuple[LabeledPrediction, ...]
    num_classes: int

    def __post_init__(self):
        object.__setattr__(self, "predictions", tuple(self.predictions))
        if self.num_classes < 2:
            raise ValueError(f"num_classes must be >= 2, got {self.num_classes}")
        for p in self.predictions:
            if p.true_class > self.num_classes or p.predicted_class > self.num_classes:
                raise ValueError(f"class id out of range 1..{self.num_classes}: {p}")

    def __len__(self) -> int:
        return len(self.predictions)

    def __iter__(self):
        return iter(self.predictions)

    def certainties(self) -> tuple[float, ...]:
        return tuple(p.certainty for p in self.predictions)

    def _arrays(self):
        """(true0, pred0, certainty) as numpy arrays, classes 0-based."""
        true0 = np.fromiter((p.true_class - 1 for p in self.predictions), dtype=np.int64, count=len(self))
        pred0 = np.fromiter((p.predicted_class - 1 for p in self.predictions), dtype=np.int64, count=len(self))
        cert = np.fromiter((p.certainty for p in self.predictions), dtype=np.float64, count=len(self))
        return true0, pred0, cert


@dataclass(frozen=True)
class ConfusionMatrix:
    """Square count grid: counts[t-1][p-1] = samples of true class t predicted as p."""

    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(tuple(int(v) for v in row) for row in self.counts))
        c = len(self.counts)
        if c == 0:
            raise ValueError("confusion matrix must have at least one class")
        for row in self.counts:
            if len(row) != c:
                raise ValueError("confusion matrix must be square")
            if any(v < 0 for v in row):
                raise ValueError("confusion counts must be non-negative")

    @property
    def num_classes(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        """Number of accepted samples in the matrix."""
        return sum(sum(row) for row in self.counts)

    @property
    def trace(self) -> int:
        return sum(self.counts[i][i] for i in range(self.num_classes))

    def count(self, true_class: int, predicted_class: int) -> int:
        """Cell lookup with 1-based class ids."""
        self._check_class(true_class)
        self._check_class(predicted_class)
        return self.counts[true_class - 1][predicted_class - 1]

    def row_total(self, true_class: int) -> int:
        """Samples of a true class (1-based) among the accepted."""
        self._check_class(true_class)
        return sum(self.counts[true_class - 1])

    def col_total(self, predicted_class: int) -> int:
        """Samples predicted as a class (1-based) among the accepted."""
        self._check_class(predicted_class)
        return sum(row[predicted_class - 1] for row in self.counts)

    def _check_class(self, c: int) -> None:
        if not 1 <= c <= self.num_classes:
            raise ValueError(f"class id {c} out of range 1..{self.num_classes}")


@dataclass(frozen=True)
class ThresholdSchedule:
    """Distinct certainty thresholds (ascending) with accepted counts.

    The first threshold accepts every sample and every entry accepts at
    least one, so per-accepted-sample metrics are defined everywhere on
    the schedule; the empty-acceptance point is never included.
    """

    thresholds: tuple[float, ...]
    accepted_counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "thresholds", tuple(float(v) for v in self.thresholds))
        object.__setattr__(self, "accepted_counts", tuple(int(v) for v in self.accepted_counts))
        if len(self.thresholds) == 0:
            raise ValueError("schedule must not be empty")
        if len(self.thresholds) != len(self.accepted_counts):
            raise ValueError("thresholds and accepted_counts must have equal length")
        if any(b <= a for a, b in itertools.pairwise(self.thresholds)):
            raise ValueError("thresholds must be strictly increasing")
        if any(b >= a for a, b in itertools.pairwise(self.accepted_counts)):
            raise ValueError("accepted counts must be strictly decreasing")
        if self.accepted_counts[-1] < 1:
            raise ValueError("every schedule point must accept at least one sample")

    def __len__(self) -> int:
        return len(self.thresholds)


def accepted_subset(preds: PredictionSet, theta: float) -> PredictionSet:
    """Predictions with certainty >= theta, original order preserved."""
    if not theta >= 0:
        raise ValueError(f"theta must be non-negative, got {theta}")
    kept = tuple(p for p in preds if p.certainty >= theta)
    return PredictionSet(kept, preds.num_classes)


def acceptance_rate(preds: PredictionSet, theta: float) -> float:
    """Fraction of samples accepted at threshold theta."""
    if len(preds) == 0:
        raise ValueError("acceptance rate of an empty prediction set is undefined")
    return len(accepted_subset(preds, theta)) / len(preds)


def confusion_matrix(preds: PredictionSet) -> ConfusionMatrix:
    """Count grid over (true class, predicted class) pairs."""
    c = preds.num_classes
    grid = [[0] * c for _ in range(c)]
    for p in preds:
        grid[p.true_class - 1][p.predicted_class - 1] += 1
    return ConfusionMatrix(tuple(tuple(row) for row in grid))


def threshold_schedule(preds: PredictionSet) -> ThresholdSchedule:
    """Schedule with one threshold per distinct certainty value.

    At the threshold equal to value v the accepted count is the number
    of samples with certainty >= v, so the schedule covers acceptance
    rates from 1.0 down to the smallest nonzero rate exactly.
    """
    if len(preds) == 0:
        raise ValueError("cannot build a schedule for an empty prediction set")
    ordered = sorted(preds.certainties())
    n = len(ordered)
    thresholds = []
    counts = []
    for value, group in itertools.groupby(ordered):
        thresholds.append(value)
        counts.append(n)
        n -= sum(1 for _ in group)
    return ThresholdSchedule(tuple(thresholds), tuple(counts))


def confusion_sweep(preds: PredictionSet) -> tuple[tuple[float, ConfusionMatrix], ...]:
    """(threshold, confusion matrix of the accepted subset) per schedule point.

    Ascending threshold order, i.e. descending acceptance rate. This is
    the shared hot path behind reject curves and confusion stacks and
    runs on the active sweep kernel (see ``rejectviz.sweep``).
    """
    if len(preds) == 0:
        raise ValueError("cannot sweep an empty prediction set")
    true0, pred0, cert = preds._arrays()
    thresholds, counts = sweep.sweep_counts(true0, pred0, cert, preds.num_classes)
    grids = counts.tolist()
    return tuple(
        (float(theta), ConfusionMatrix(tuple(tuple(row) for row in grid)))
        for theta, grid in zip(thresholds.tolist(), grids)
    )
