"""Classifier evaluation with a global reject option.

Filter predictions by a certainty threshold, sweep every realizable
acceptance rate, compute reject curves (accuracy, precision, recall on
the accepted samples) and stacked confusion charts, render everything
as deterministic SVG, and regenerate the bundled Gaussian/Bayes
benchmark.
"""

from .core import (
    ConfusionMatrix,
    LabeledPrediction,
    PredictionSet,
    ThresholdSchedule,
    accepted_subset,
    acceptance_rate,
    confusion_matrix,
    confusion_sweep,
    threshold_schedule,
)
from .metrics import (
    CurvePoint,
    MetricKind,
    MetricSpec,
    RejectCurve,
    accuracy,
    precision,
    recall,
    reject_curve,
)
from .render import ChartStyle, SvgDocument, render_curves, render_pie, render_stack
from .stack import (
    OTHER,
    Align,
    CellId,
    ConfusionStack,
    Order,
    StackCell,
    StackColumn,
    StackOptions,
    align_baseline,
    build_stack,
    condense,
    order_cells,
)
from .synth import (
    GaussianComponent,
    GaussianMixtureSpec,
    Sample,
    bayes_predictions,
    classify_dataset,
    default_mixture,
    load_mixture,
    mixture_from_dict,
    mixture_to_dict,
    posterior,
    predict,
    sample_dataset,
)

__version__ = "0.1.0"

__all__ = [
    "Align",
    "CellId",
    "ChartStyle",
    "ConfusionMatrix",
    "ConfusionStack",
    "CurvePoint",
    "GaussianComponent",
    "GaussianMixtureSpec",
    "LabeledPrediction",
    "MetricKind",
    "MetricSpec",
    "OTHER",
    "Order",
    "PredictionSet",
    "RejectCurve",
    "Sample",
    "StackCell",
    "StackColumn",
    "StackOptions",
    "SvgDocument",
    "ThresholdSchedule",
    "accepted_subset",
    "acceptance_rate",
    "accuracy",
    "align_baseline",
    "bayes_predictions",
    "build_stack",
    "classify_dataset",
    "condense",
    "confusion_matrix",
    "confusion_sweep",
    "default_mixture",
    "load_mixture",
    "mixture_from_dict",
    "mixture_to_dict",
    "order_cells",
    "posterior",
    "precision",
    "predict",
    "recall",
    "reject_curve",
    "render_curves",
    "render_pie",
    "render_stack",
    "sample_dataset",
    "threshold_schedule",
]
