import numpy as np

import deepexpr.nn.gradcheck as gradcheck_module
from deepexpr.nn import backward, gradient_check, init_glorot


def test_correct_gradients_pass_for_reconstruction():
    rng = np.random.default_rng(20)
    net = init_glorot([5, 4, 3, 4, 5], seed=0, activations="sigmoid")
    x = rng.uniform(0.1, 0.9, (6, 5))
    assert gradient_check(net, x, x, loss="reconstruction") < 1e-6


def test_correct_gradients_pass_for_classification():
    rng = np.random.default_rng(21)
    net = init_glorot([4, 6, 3], seed=1, activations=["relu", "softmax"])
    x = rng.standard_normal((5, 4))
    targets = np.eye(3)[rng.integers(0, 3, 5)]
    assert gradient_check(net, x, targets, loss="classification") < 1e-6


def test_frozen_layers_are_skipped():
    rng = np.random.default_rng(22)
    net = init_glorot([4, 3, 2], seed=2, activations="sigmoid")
    net.layers[0].frozen = True
    x = rng.uniform(0.2, 0.8, (4, 4))
    targets = rng.uniform(0.2, 0.8, (4, 2))
    # frozen analytic gradients are zero by contract; including them would
    # blow the relative error up to 1
    assert gradient_check(net, x, targets, loss="reconstruction") < 1e-6


def test_corrupted_gradient_is_detected(monkeypatch):
    """Doubling one weight gradient must push the max error to 0.5:
    |g - 2g| / max(|g|, |2g|) = 1/2."""
    real_backward = backward

    def doubled(net, record, grad, wrt="output"):
        grads = real_backward(net, record, grad, wrt=wrt)
        dw, db = grads[0]
        grads[0] = (dw * 2.0, db)
        return grads

    monkeypatch.setattr(gradcheck_module, "backward", doubled)
    rng = np.random.default_rng(23)
    net = init_glorot([3, 2], seed=3, activations="sigmoid")
    x = rng.uniform(0.2, 0.8, (5, 3))
    targets = rng.uniform(0.2, 0.8, (5, 2))
    error = gradient_check(net, x, targets, loss="reconstruction")
    assert error >= 0.3
    assert abs(error - 0.5) < 0.05
