"""Shared test utilities: brute-force oracles and random data generators.

The oracles re-derive every quantity from first principles (plain
filtering and dict counting), independent of the library's sweep
kernel, so exact comparisons against them are meaningful.
"""

from __future__ import annotations

import numpy as np

from rejectviz import LabeledPrediction, PredictionSet


def random_predictions(rng: np.random.Generator, max_n: int = 50, max_c: int = 4) -> PredictionSet:
    """Random prediction set, with heavy certainty ties half of the time."""
    c = int(rng.integers(2, max_c + 1))
    n = int(rng.integers(1, max_n + 1))
    true = rng.integers(1, c + 1, size=n)
    pred = rng.integers(1, c + 1, size=n)
    if rng.random() < 0.5:
        cert = rng.integers(0, 6, size=n) / 5.0
    else:
        cert = rng.random(size=n)
    preds = tuple(
        LabeledPrediction(int(t), int(p), float(r)) for t, p, r in zip(true, pred, cert)
    )
    return PredictionSet(preds, c)


def as_triples(preds: PredictionSet) -> list[tuple[int, int, float]]:
    return [(p.true_class, p.predicted_class, p.certainty) for p in preds]


def brute_confusion(triples, num_classes: int, theta: float) -> list[list[int]]:
    """Filter-and-count confusion grid, [t-1][p-1], for certainty >= theta."""
    grid = [[0] * num_classes for _ in range(num_classes)]
    for t, p, r in triples:
        if r >= theta:
            grid[t - 1][p - 1] += 1
    return grid


def brute_thresholds(triples) -> list[float]:
    return sorted({r for _, _, r in triples})


def brute_accuracy(grid) -> float:
    total = sum(sum(row) for row in grid)
    return sum(grid[i][i] for i in range(len(grid))) / total


def brute_precision(grid, c: int) -> float | None:
    col = sum(row[c - 1] for row in grid)
    return None if col == 0 else grid[c - 1][c - 1] / col


def brute_recall(grid, c: int) -> float | None:
    row = sum(grid[c - 1])
    return None if row == 0 else grid[c - 1][c - 1] / row
