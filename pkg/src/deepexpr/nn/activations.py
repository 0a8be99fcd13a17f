"""Elementwise activations and their derivatives."""

from __future__ import annotations

import numpy as np

ACTIVATIONS = ("sigmoid", "relu", "softmax", "identity")


def sigmoid(z: np.ndarray) -> np.ndarray:
    # split by sign so exp never overflows
    out = np.empty_like(z, dtype=np.float64)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def relu(z: np.ndarray) -> np.ndarray:
    return np.maximum(z, 0.0)


def softmax(z: np.ndarray) -> np.ndarray:
    # max-subtraction per row for stability
    shifted = z - z.max(axis=-1, keepdims=True)
    ez = np.exp(shifted)
    return ez / ez.sum(axis=-1, keepdims=True)


def apply_activation(kind: str, z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.float64)
    if kind == "sigmoid":
        return sigmoid(z)
    if kind == "relu":
        return relu(z)
    if kind == "softmax":
        return softmax(z)
    if kind == "identity":
        return z.copy()
    raise ValueError(f"unknown activation {kind!r}")


def activation_backward(
    kind: str, grad_out: np.ndarray, z: np.ndarray, a: np.ndarray
) -> np.ndarray:
    """Gradient w.r.t. pre-activation z, given the gradient w.r.t. a."""
    if kind == "sigmoid":
        return grad_out * a * (1.0 - a)
    if kind == "relu":
        return np.where(z > 0, grad_out, 0.0)
    if kind == "softmax":
        # full Jacobian-vector product: dz_i = a_i * (g_i - sum_j g_j a_j)
        inner = (grad_out * a).sum(axis=-1, keepdims=True)
        return a * (grad_out - inner)
    if kind == "identity":
        return grad_out
    raise ValueError(f"unknown activation {kind!r}")
