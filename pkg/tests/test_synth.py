import json
import math

import numpy as np
import pytest

from rejectviz import (
    GaussianComponent,
    GaussianMixtureSpec,
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


def direct_posterior(spec, x):
    """Independent oracle: plain density formula, no log-space tricks."""
    x = np.asarray(x, dtype=float)
    total = spec.total_count
    dens = []
    for comps in spec.classes:
        d = 0.0
        for comp in comps:
            mean = np.asarray(comp.mean)
            std = np.asarray(comp.stddev)
            z = (x - mean) / std
            norm = (2 * math.pi) ** (len(std) / 2) * float(np.prod(std))
            d += (comp.count / total) * math.exp(-0.5 * float(z @ z)) / norm
        dens.append(d)
    dens = np.asarray(dens)
    return dens / dens.sum()


WELL_SEPARATED = GaussianMixtureSpec(
    classes=(
        (GaussianComponent((-100.0, 0.0), (1.0, 1.0), 10),),
        (GaussianComponent((100.0, 0.0), (1.0, 1.0), 10),),
    ),
    dimensionality=2,
)


class TestSpecTypes:
    def test_component_validation(self):
        with pytest.raises(ValueError):
            GaussianComponent((0.0,), (1.0, 1.0), 5)
        with pytest.raises(ValueError):
            GaussianComponent((0.0,), (0.0,), 5)
        with pytest.raises(ValueError):
            GaussianComponent((0.0,), (1.0,), 0)

    def test_mixture_validation(self):
        comp = GaussianComponent((0.0,), (1.0,), 5)
        with pytest.raises(ValueError):
            GaussianMixtureSpec(((comp,),), 1)  # one class
        with pytest.raises(ValueError):
            GaussianMixtureSpec(((comp,), (comp,)), 2)  # wrong dimensionality

    def test_default_mixture_matches_published_cardinalities(self):
        spec = default_mixture()
        assert spec.num_classes == 2
        assert spec.total_count == 240
        assert spec.class_count(1) == 80
        assert spec.class_count(2) == 160
        assert spec.classes[0][0].mean == (0.0, 0.0)
        assert spec.classes[0][0].stddev == (2.0, 1.0)
        assert spec.classes[1][0].stddev == (1.0, 0.5)
        assert spec.classes[1][1].mean == (6.0, 0.0)

    def test_priors(self):
        assert default_mixture().priors() == (80 / 240, 160 / 240)


class TestSampling:
    def test_exact_counts_per_class(self):
        for seed in (0, 1, 99):
            samples = sample_dataset(default_mixture(), seed)
            assert len(samples) == 240
            assert sum(1 for s in samples if s.true_class == 1) == 80
            assert sum(1 for s in samples if s.true_class == 2) == 160

    def test_deterministic(self):
        a = sample_dataset(default_mixture(), 5)
        b = sample_dataset(default_mixture(), 5)
        assert a == b
        c = sample_dataset(default_mixture(), 6)
        assert a != c

    def test_class_major_component_major_order(self):
        samples = sample_dataset(default_mixture(), 3)
        assert all(s.true_class == 1 for s in samples[:80])
        assert all(s.true_class == 2 for s in samples[80:])
        # first block comes from the (seed, class 0, component 0) stream
        rng = np.random.default_rng([3, 0, 0])
        expected = rng.normal((0.0, 0.0), (2.0, 1.0), size=(40, 2))
        assert samples[0].point == tuple(expected[0])
        assert samples[39].point == tuple(expected[39])

    def test_sample_standard_deviation_within_two_percent(self):
        spec = GaussianMixtureSpec(
            classes=(
                (GaussianComponent((0.0, 0.0), (2.0, 0.5), 100_000),),
                (GaussianComponent((50.0, 50.0), (1.0, 1.0), 1),),
            ),
            dimensionality=2,
        )
        samples = sample_dataset(spec, 42)
        pts = np.array([s.point for s in samples[:100_000]])
        for axis, sigma in enumerate((2.0, 0.5)):
            assert abs(pts[:, axis].std() - sigma) <= 0.02 * sigma

    def test_negative_seed_rejected(self):
        with pytest.raises(ValueError):
            sample_dataset(default_mixture(), -1)


class TestPosterior:
    def test_symmetric_equal_priors_give_half(self):
        spec = GaussianMixtureSpec(
            classes=(
                (GaussianComponent((-1.0,), (1.0,), 10),),
                (GaussianComponent((1.0,), (1.0,), 10),),
            ),
            dimensionality=1,
        )
        p = posterior(spec, [0.0])
        assert p[0] == pytest.approx(0.5, abs=1e-12)
        assert p[1] == pytest.approx(0.5, abs=1e-12)

    def test_isolated_component_dominates(self):
        p = posterior(WELL_SEPARATED, [-100.0, 0.0])
        assert p[0] > 0.99

    def test_matches_direct_density_formula_on_grid(self):
        spec = default_mixture()
        for x0 in np.linspace(-4.0, 10.0, 15):
            for x1 in np.linspace(-3.0, 3.0, 7):
                ours = posterior(spec, [x0, x1])
                oracle = direct_posterior(spec, [x0, x1])
                assert np.all(np.abs(ours - oracle) <= 1e-9)

    def test_sums_to_one(self):
        rng = np.random.default_rng(40)
        spec = default_mixture()
        for _ in range(200):
            x = rng.normal(2, 5, size=2)
            assert abs(posterior(spec, x).sum() - 1.0) <= 1e-12

    def test_uniform_fallback_when_all_densities_vanish(self):
        p = posterior(default_mixture(), [math.inf, 0.0])
        assert p.tolist() == [0.5, 0.5]

    def test_count_scaling_leaves_posterior_invariant(self):
        spec = default_mixture()
        scaled = GaussianMixtureSpec(
            classes=tuple(
                tuple(
                    GaussianComponent(c.mean, c.stddev, c.count * 7) for c in comps
                )
                for comps in spec.classes
            ),
            dimensionality=2,
        )
        rng = np.random.default_rng(41)
        for _ in range(50):
            x = rng.normal(2, 4, size=2)
            assert np.all(np.abs(posterior(spec, x) - posterior(scaled, x)) <= 1e-12)
            assert predict(spec, x)[0] == predict(scaled, x)[0]

    def test_dimensionality_checked(self):
        with pytest.raises(ValueError):
            posterior(default_mixture(), [1.0])


class TestPredict:
    def test_tie_breaks_to_smallest_index(self):
        spec = GaussianMixtureSpec(
            classes=(
                (GaussianComponent((-1.0,), (1.0,), 10),),
                (GaussianComponent((1.0,), (1.0,), 10),),
            ),
            dimensionality=1,
        )
        cls, certainty = predict(spec, [0.0])
        assert cls == 1
        assert certainty == pytest.approx(0.5, abs=1e-12)

    def test_argmax_of_posterior(self):
        spec = default_mixture()
        rng = np.random.default_rng(42)
        for _ in range(100):
            x = rng.normal(2, 4, size=2)
            cls, certainty = predict(spec, x)
            p = posterior(spec, x)
            assert cls == int(np.argmax(p)) + 1
            assert certainty == p[cls - 1]
            assert 1 / 2 - 1e-12 <= certainty <= 1.0

    def test_perfectly_separated_data_classified_exactly(self):
        preds = classify_dataset(WELL_SEPARATED, sample_dataset(WELL_SEPARATED, 0))
        assert all(p.true_class == p.predicted_class for p in preds)


class TestClassifyDataset:
    def test_order_preserved_and_single_sample(self):
        samples = sample_dataset(default_mixture(), 2)
        preds = classify_dataset(default_mixture(), samples[:1])
        assert len(preds) == 1
        assert preds.predictions[0].true_class == samples[0].true_class

    def test_bit_identical_predictions_for_same_seed(self):
        a = bayes_predictions(default_mixture(), 11)
        b = bayes_predictions(default_mixture(), 11)
        assert a == b


class TestMixtureJson:
    def test_round_trip(self, tmp_path):
        spec = default_mixture()
        doc = mixture_to_dict(spec)
        assert mixture_from_dict(doc) == spec
        path = tmp_path / "mix.json"
        path.write_text(json.dumps(doc))
        assert load_mixture(path) == spec

    def test_malformed_document(self):
        with pytest.raises(ValueError):
            mixture_from_dict({"classes": [[{"mean": [0.0]}]]})
