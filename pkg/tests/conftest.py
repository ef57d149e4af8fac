import pytest

from rejectviz import bayes_predictions, default_mixture


@pytest.fixture(scope="session")
def demo_preds():
    """Bayes predictions on the embedded mixture, seed 7."""
    return bayes_predictions(default_mixture(), 7)
