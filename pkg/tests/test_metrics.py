import numpy as np
import pytest

from rejectviz import (
    ConfusionMatrix,
    CurvePoint,
    MetricKind,
    MetricSpec,
    RejectCurve,
    accuracy,
    precision,
    recall,
    reject_curve,
)
from rejectviz.core import LabeledPrediction, PredictionSet

from _helpers import (
    as_triples,
    brute_accuracy,
    brute_confusion,
    brute_precision,
    brute_recall,
    brute_thresholds,
    random_predictions,
)

# Frozen 1e6-draw Monte-Carlo estimate of the Bayes accuracy of the
# embedded mixture (see notes in the acceptance suite).
MC_BAYES_ACCURACY = 0.781447


class TestMetricSpec:
    def test_accuracy_takes_no_class(self):
        with pytest.raises(ValueError):
            MetricSpec(MetricKind.ACCURACY, 1)

    def test_precision_requires_class(self):
        with pytest.raises(ValueError):
            MetricSpec(MetricKind.PRECISION)

    def test_labels(self):
        assert MetricSpec(MetricKind.ACCURACY).key == "accuracy"
        assert MetricSpec(MetricKind.RECALL, 2).key == "recall_2"
        assert MetricSpec(MetricKind.PRECISION, 1).label == "precision (class 1)"


class TestAccuracy:
    def test_direct_count(self):
        assert accuracy(ConfusionMatrix(((1, 1), (0, 1)))) == 2 / 3

    def test_perfect(self):
        assert accuracy(ConfusionMatrix(((3, 0), (0, 5)))) == 1.0

    def test_empty_raises(self):
        with pytest.raises(ValueError, match="no accepted samples"):
            accuracy(ConfusionMatrix(((0, 0), (0, 0))))

    def test_demo_near_monte_carlo_oracle(self, demo_preds):
        from rejectviz import confusion_matrix

        assert abs(accuracy(confusion_matrix(demo_preds)) - MC_BAYES_ACCURACY) <= 0.05


class TestPrecisionRecall:
    def test_precision_direct(self):
        assert precision(ConfusionMatrix(((1, 1), (0, 1))), 2) == 1 / 2

    def test_precision_undefined_on_empty_column(self):
        assert precision(ConfusionMatrix(((1, 0), (1, 0))), 2) is None

    def test_recall_direct(self):
        assert recall(ConfusionMatrix(((1, 1), (0, 1))), 1) == 1 / 2

    def test_recall_undefined_on_empty_row(self):
        assert recall(ConfusionMatrix(((0, 0), (1, 1))), 1) is None

    def test_matches_brute_force_recounts(self):
        rng = np.random.default_rng(20)
        for _ in range(30):
            preds = random_predictions(rng, max_n=20)
            grid = brute_confusion(as_triples(preds), preds.num_classes, 0.0)
            cm = ConfusionMatrix(tuple(tuple(r) for r in grid))
            for c in range(1, preds.num_classes + 1):
                assert precision(cm, c) == brute_precision(grid, c)
                assert recall(cm, c) == brute_recall(grid, c)

    def test_class_id_out_of_range(self):
        cm = ConfusionMatrix(((1, 0), (0, 1)))
        with pytest.raises(ValueError):
            precision(cm, 3)


class TestRejectCurve:
    def test_perfect_classifier_flat_accuracy(self):
        preds = PredictionSet(
            tuple(LabeledPrediction(1 + i % 2, 1 + i % 2, i / 10) for i in range(10)), 2
        )
        curve = reject_curve(preds, MetricSpec(MetricKind.ACCURACY))
        assert all(p.value == 1.0 for p in curve.points)

    def test_full_acceptance_point_equals_unfiltered_metric(self, demo_preds):
        from rejectviz import confusion_matrix

        cm = confusion_matrix(demo_preds)
        for metric in (
            MetricSpec(MetricKind.ACCURACY),
            MetricSpec(MetricKind.PRECISION, 1),
            MetricSpec(MetricKind.RECALL, 1),
            MetricSpec(MetricKind.RECALL, 2),
        ):
            curve = reject_curve(demo_preds, metric)
            first = curve.points[0]
            assert first.acceptance_rate == 1.0
            if metric.kind is MetricKind.ACCURACY:
                assert first.value == accuracy(cm)
            elif metric.kind is MetricKind.PRECISION:
                assert first.value == precision(cm, metric.target_class)
            else:
                assert first.value == recall(cm, metric.target_class)

    def test_demo_curve_matches_brute_force_exactly(self, demo_preds):
        curve = reject_curve(demo_preds, MetricSpec(MetricKind.ACCURACY))
        triples = as_triples(demo_preds)
        thresholds = brute_thresholds(triples)
        assert len(curve.points) == len(thresholds)
        for point, theta in zip(curve.points, thresholds):
            grid = brute_confusion(triples, 2, theta)
            accepted = sum(sum(r) for r in grid)
            assert point.acceptance_rate == accepted / 240
            assert point.value == brute_accuracy(grid)

    def test_values_are_independent_recounts(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            preds = random_predictions(rng)
            triples = as_triples(preds)
            for c in range(1, preds.num_classes + 1):
                curve = reject_curve(preds, MetricSpec(MetricKind.RECALL, c))
                for point, theta in zip(curve.points, brute_thresholds(triples)):
                    assert point.value == brute_recall(
                        brute_confusion(triples, preds.num_classes, theta), c
                    )

    def test_target_class_out_of_range(self, demo_preds):
        with pytest.raises(ValueError):
            reject_curve(demo_preds, MetricSpec(MetricKind.PRECISION, 9))

    def test_curve_validation(self):
        metric = MetricSpec(MetricKind.ACCURACY)
        with pytest.raises(ValueError):
            RejectCurve((CurvePoint(0.5, 0.5), CurvePoint(0.5, 0.6)), metric)
        with pytest.raises(ValueError):
            RejectCurve((CurvePoint(1.0, 1.5),), metric)
        with pytest.raises(ValueError):
            RejectCurve((CurvePoint(0.0, 0.5),), metric)
