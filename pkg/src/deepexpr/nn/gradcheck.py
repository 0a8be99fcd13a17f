"""Central-difference verification of the backpropagated gradients."""

from __future__ import annotations

import numpy as np

from .losses import classification_cross_entropy, reconstruction_cross_entropy
from .network import DenseNetwork, backward, forward

GUARD = 1e-8  # denominator floor for directions where both sides vanish


def _loss_value(net: DenseNetwork, batch: np.ndarray, targets: np.ndarray, loss: str) -> float:
    out = forward(net, batch).output
    if loss == "reconstruction":
        value, _ = reconstruction_cross_entropy(targets, out)
    else:
        value, _ = classification_cross_entropy(targets, out)
    return value


def gradient_check(
    net: DenseNetwork,
    batch: np.ndarray,
    targets: np.ndarray,
    loss: str = "reconstruction",
    epsilon: float = 1e-5,
) -> float:
    """Max over trainable parameters of
    |analytic - numeric| / max(|analytic|, |numeric|, 1e-8).

    Meant for small networks; the numeric side costs two forward passes
    per parameter. Frozen layers are skipped (their analytic gradient is
    zero by contract, not by calculus).
    """
    batch = np.asarray(batch, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    record = forward(net, batch)
    if loss == "reconstruction":
        _, grad = reconstruction_cross_entropy(targets, record.output)
        wrt = "output"
    else:
        _, grad = classification_cross_entropy(targets, record.output)
        wrt = "logits"
    analytic = backward(net, record, grad, wrt=wrt)

    worst = 0.0
    for layer, (dw, db) in zip(net.layers, analytic):
        if layer.frozen:
            continue
        for param, grad_mat in ((layer.weights, dw), (layer.biases, db)):
            flat = param.reshape(-1)
            grad_flat = grad_mat.reshape(-1)
            for i in range(flat.size):
                saved = flat[i]
                flat[i] = saved + epsilon
                plus = _loss_value(net, batch, targets, loss)
                flat[i] = saved - epsilon
                minus = _loss_value(net, batch, targets, loss)
                flat[i] = saved
                numeric = (plus - minus) / (2.0 * epsilon)
                denom = max(abs(grad_flat[i]), abs(numeric), GUARD)
                worst = max(worst, abs(grad_flat[i] - numeric) / denom)
    return worst
