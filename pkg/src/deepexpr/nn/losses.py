"""Reconstruction and classification cross-entropy losses.

Both return (scalar loss, gradient) with the 1/batch factor already folded
into the gradient. The reconstruction gradient is w.r.t. the network
output; the classification gradient is w.r.t. the pre-softmax /
pre-sigmoid logits (probs - targets), the numerically stable joint form.
"""

from __future__ import annotations

import numpy as np

from ..errors import DimensionMismatch

RECON_CLIP = 1e-7  # keeps log() finite on saturated outputs
PROB_FLOOR = 1e-12


def reconstruction_cross_entropy(
    x: np.ndarray, xhat: np.ndarray
) -> tuple[float, np.ndarray]:
    """Elementwise Bernoulli cross-entropy, summed per sample and averaged
    over the batch; gradient w.r.t. xhat."""
    x = np.asarray(x, dtype=np.float64)
    xhat = np.asarray(xhat, dtype=np.float64)
    if x.shape != xhat.shape:
        raise DimensionMismatch(f"shapes differ: {x.shape} vs {xhat.shape}")
    n = x.shape[0]
    clipped = np.clip(xhat, RECON_CLIP, 1.0 - RECON_CLIP)
    loss = -(x * np.log(clipped) + (1.0 - x) * np.log(1.0 - clipped)).sum() / n
    grad = (clipped - x) / (clipped * (1.0 - clipped)) / n
    return float(loss), grad


def classification_cross_entropy(
    targets: np.ndarray, probs: np.ndarray
) -> tuple[float, np.ndarray]:
    """Negative log-likelihood averaged over the batch.

    One column means a logistic head (Bernoulli targets in {0,1}); several
    columns mean a softmax head (one-hot targets). Either way the returned
    gradient w.r.t. the logits is (probs - targets) / batch.
    """
    targets = np.asarray(targets, dtype=np.float64)
    probs = np.asarray(probs, dtype=np.float64)
    if targets.shape != probs.shape:
        raise DimensionMismatch(f"shapes differ: {targets.shape} vs {probs.shape}")
    n = targets.shape[0]
    if probs.shape[1] == 1:
        p = np.clip(probs, PROB_FLOOR, 1.0 - PROB_FLOOR)
        loss = -(targets * np.log(p) + (1.0 - targets) * np.log(1.0 - p)).sum() / n
    else:
        p = np.maximum(probs, PROB_FLOOR)
        loss = -(targets * np.log(p)).sum() / n
    grad = (probs - targets) / n
    return float(loss), grad
