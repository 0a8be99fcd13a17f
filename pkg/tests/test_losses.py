import math

import numpy as np
import pytest

from deepexpr.errors import DimensionMismatch
from deepexpr.nn.losses import (
    classification_cross_entropy,
    reconstruction_cross_entropy,
)


def _recon_by_hand(x, xhat):
    """Elementwise sum with scalar math.log, averaged over rows."""
    total = 0.0
    for xi, xhi in zip(x, xhat):
        for v, vh in zip(xi, xhi):
            total -= v * math.log(vh) + (1 - v) * math.log(1 - vh)
    return total / len(x)


def test_reconstruction_loss_matches_scalar_sum():
    x = np.array([[0.1, 0.9, 0.5], [0.0, 1.0, 0.25]])
    xhat = np.array([[0.2, 0.8, 0.5], [0.1, 0.7, 0.3]])
    value, _ = reconstruction_cross_entropy(x, xhat)
    assert value == pytest.approx(_recon_by_hand(x, xhat), rel=1e-12)


def test_reconstruction_loss_is_zero_ish_at_perfect_saturated_output():
    x = np.array([[0.0, 1.0]])
    value, _ = reconstruction_cross_entropy(x, x)
    # clipping keeps the log finite, so the value is tiny but positive
    assert 0.0 < value < 1e-5


def test_reconstruction_gradient_matches_finite_difference():
    rng = np.random.default_rng(3)
    x = rng.uniform(0.05, 0.95, (4, 5))
    xhat = rng.uniform(0.05, 0.95, (4, 5))
    _, grad = reconstruction_cross_entropy(x, xhat)
    eps = 1e-7
    for i, j in [(0, 0), (1, 3), (3, 4)]:
        bumped = xhat.copy()
        bumped[i, j] += eps
        up, _ = reconstruction_cross_entropy(x, bumped)
        bumped[i, j] -= 2 * eps
        down, _ = reconstruction_cross_entropy(x, bumped)
        assert grad[i, j] == pytest.approx((up - down) / (2 * eps), rel=1e-5)


def test_reconstruction_loss_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        reconstruction_cross_entropy(np.zeros((2, 3)), np.zeros((2, 4)))


def test_binary_classification_loss_value():
    targets = np.array([[1.0], [0.0], [1.0]])
    probs = np.array([[0.9], [0.2], [0.6]])
    value, grad = classification_cross_entropy(targets, probs)
    expected = -(math.log(0.9) + math.log(0.8) + math.log(0.6)) / 3
    assert value == pytest.approx(expected, rel=1e-12)
    assert np.allclose(grad, (probs - targets) / 3)


def test_softmax_classification_loss_value():
    targets = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    probs = np.array([[0.7, 0.2, 0.1], [0.1, 0.3, 0.6]])
    value, grad = classification_cross_entropy(targets, probs)
    expected = -(math.log(0.7) + math.log(0.6)) / 2
    assert value == pytest.approx(expected, rel=1e-12)
    assert np.allclose(grad, (probs - targets) / 2)


def test_classification_loss_survives_hard_zero_probability():
    targets = np.array([[0.0, 1.0]])
    probs = np.array([[1.0, 0.0]])
    value, _ = classification_cross_entropy(targets, probs)
    assert np.isfinite(value)
    assert value > 10.0


def test_losses_return_python_floats():
    x = np.full((2, 2), 0.5)
    value, _ = reconstruction_cross_entropy(x, x)
    assert isinstance(value, float)
    value, _ = classification_cross_entropy(
        np.array([[1.0]]), np.array([[0.5]])
    )
    assert isinstance(value, float)
