"""Synthetic benchmark lab: axis-aligned Gaussian mixtures + Bayes rule.

Datasets are drawn from a per-class mixture of axis-aligned Gaussians
and classified with the optimal Bayes rule under full knowledge of the
generating distribution: the predicted class is the posterior argmax
and the certainty is the posterior maximum. Class priors are the
empirical mixture weights implied by the component cardinalities.

Reproducibility contract: sampling uses one numpy ``default_rng``
stream per component, seeded with the triple
(master_seed, class_index, component_index), both indices 0-based.
Identical (spec, seed) therefore yields bit-identical datasets, and
adding or reordering other components never perturbs a component's
own draws.

Posteriors are computed in log-density space with max-subtraction
before exponentiation, so points far from every mean do not underflow;
if every class log-density is non-finite the posterior falls back to
uniform 1/C.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import LabeledPrediction, PredictionSet

_LOG_TWO_PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class GaussianComponent:
    """Axis-aligned Gaussian: mean, per-axis standard deviation, cardinality."""

    mean: tuple[float, ...]
    stddev: tuple[float, ...]
    count: int

    def __post_init__(self):
        object.__setattr__(self, "mean", tuple(float(v) for v in self.mean))
        object.__setattr__(self, "stddev", tuple(float(v) for v in self.stddev))
        if len(self.mean) != len(self.stddev) or len(self.mean) == 0:
            raise ValueError("mean and stddev must be non-empty and of equal dimensionality")
        if any(s <= 0 for s in self.stddev):
            raise ValueError("standard deviations must be positive")
        if self.count < 1:
            raise ValueError(f"component count must be >= 1, got {self.count}")


@dataclass(frozen=True)
class GaussianMixtureSpec:
    """Per-class component lists; class c is classes[c-1]."""

    classes: tuple[tuple[GaussianComponent, ...], ...]
    dimensionality: int

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(tuple(comps) for comps in self.classes))
        if len(self.classes) < 2:
            raise ValueError("need at least 2 classes")
        for comps in self.classes:
            if len(comps) == 0:
                raise ValueError("every class needs at least one component")
            for comp in comps:
                if len(comp.mean) != self.dimensionality:
                    raise ValueError(
                        f"component dimensionality {len(comp.mean)} != spec {self.dimensionality}"
                    )

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def class_count(self, c: int) -> int:
        """Total cardinality of class c (1-based)."""
        return sum(comp.count for comp in self.classes[c - 1])

    @property
    def total_count(self) -> int:
        return sum(self.class_count(c) for c in range(1, self.num_classes + 1))

    def priors(self) -> tuple[float, ...]:
        total = self.total_count
        return tuple(self.class_count(c) / total for c in range(1, self.num_classes + 1))


@dataclass(frozen=True)
class Sample:
    point: tuple[float, ...]
    true_class: int


def default_mixture() -> GaussianMixtureSpec:
    """The embedded two-class 2-d benchmark mixture (240 samples, 80/160).

    Class 1 is bimodal and broad, class 2 overlaps it with a tight and
    a wide component, giving a 1-to-2 class imbalance and a certainty
    landscape where rejection starves the classes unevenly.
    """
    return GaussianMixtureSpec(
        classes=(
            (
                GaussianComponent(mean=(0.0, 0.0), stddev=(2.0, 1.0), count=40),
                GaussianComponent(mean=(4.0, 0.0), stddev=(2.0, 1.0), count=40),
            ),
            (
                GaussianComponent(mean=(2.0, 0.0), stddev=(1.0, 0.5), count=100),
                GaussianComponent(mean=(6.0, 0.0), stddev=(1.0, 1.0), count=60),
            ),
        ),
        dimensionality=2,
    )


def mixture_from_dict(doc: dict) -> GaussianMixtureSpec:
    """Build a spec from the JSON document layout (see mixture_to_dict)."""
    try:
        classes = tuple(
            tuple(
                GaussianComponent(
                    mean=tuple(comp["mean"]),
                    stddev=tuple(comp["stddev"]),
                    count=int(comp["count"]),
                )
                for comp in comps
            )
            for comps in doc["classes"]
        )
        dim = int(doc["dimensionality"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed mixture document: {exc}") from exc
    return GaussianMixtureSpec(classes=classes, dimensionality=dim)


def mixture_to_dict(spec: GaussianMixtureSpec) -> dict:
    return {
        "dimensionality": spec.dimensionality,
        "classes": [
            [
                {"mean": list(comp.mean), "stddev": list(comp.stddev), "count": comp.count}
                for comp in comps
            ]
            for comps in spec.classes
        ],
    }


def load_mixture(path: str | Path) -> GaussianMixtureSpec:
    with open(path, encoding="utf-8") as fh:
        return mixture_from_dict(json.load(fh))


def sample_dataset(spec: GaussianMixtureSpec, seed: int) -> list[Sample]:
    """Draw exactly `count` samples per component, deterministically.

    Output order is class-major, then component-major, then draw order.
    """
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    samples = []
    for ci, comps in enumerate(spec.classes):
        for ki, comp in enumerate(comps):
            rng = np.random.default_rng([seed, ci, ki])
            points = rng.normal(comp.mean, comp.stddev, size=(comp.count, spec.dimensionality))
            for row in points:
                samples.append(Sample(point=tuple(float(v) for v in row), true_class=ci + 1))
    return samples


def _class_log_densities(spec: GaussianMixtureSpec, x) -> np.ndarray:
    """log(class count-weighted density) per class, up to a shared constant."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (spec.dimensionality,):
        raise ValueError(f"point must have shape ({spec.dimensionality},), got {x.shape}")
    out = np.empty(spec.num_classes)
    # errstate: extreme points may overflow z@z to inf; that legitimately
    # yields a -inf log-density instead of a warning
    with np.errstate(over="ignore", invalid="ignore"):
        for ci, comps in enumerate(spec.classes):
            terms = np.empty(len(comps))
            for ki, comp in enumerate(comps):
                mean = np.asarray(comp.mean)
                std = np.asarray(comp.stddev)
                z = (x - mean) / std
                log_pdf = (
                    -0.5 * float(z @ z) - float(np.sum(np.log(std))) - 0.5 * spec.dimensionality * _LOG_TWO_PI
                )
                terms[ki] = math.log(comp.count) + log_pdf
            m = terms.max()
            out[ci] = m + math.log(np.exp(terms - m).sum()) if np.isfinite(m) else m
    return out


def posterior(spec: GaussianMixtureSpec, x) -> np.ndarray:
    """Class posterior p(c|x) with count-derived priors; sums to 1.

    Falls back to the uniform vector when every class density is
    numerically zero (all log-densities non-finite).
    """
    log_dens = _class_log_densities(spec, x)
    m = log_dens.max()
    if not np.isfinite(m):
        return np.full(spec.num_classes, 1.0 / spec.num_classes)
    p = np.exp(log_dens - m)
    return p / p.sum()


def predict(spec: GaussianMixtureSpec, x) -> tuple[int, float]:
    """(1-based argmax class, max posterior); ties go to the smallest index."""
    p = posterior(spec, x)
    idx = int(np.argmax(p))
    return idx + 1, float(p[idx])


def classify_dataset(spec: GaussianMixtureSpec, samples: list[Sample]) -> PredictionSet:
    """One labeled prediction per sample, order preserved."""
    preds = []
    for s in samples:
        cls, certainty = predict(spec, s.point)
        preds.append(LabeledPrediction(s.true_class, cls, certainty))
    return PredictionSet(tuple(preds), spec.num_classes)


def bayes_predictions(spec: GaussianMixtureSpec, seed: int) -> PredictionSet:
    """Sample a dataset and classify it with the Bayes rule in one step."""
    return classify_dataset(spec, sample_dataset(spec, seed))
