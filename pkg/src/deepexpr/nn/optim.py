"""Training configuration and parameter-update rules (SGD, Adam)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import BadHyperparams, DimensionMismatch
from .network import DenseNetwork


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 1000
    batch_size: int = 32
    learning_rate: float = 1e-3
    optimizer: str = "adam"
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    seed: int = 0
    shuffle_each_epoch: bool = True

    def __post_init__(self):
        if self.epochs < 0:
            raise BadHyperparams(f"epochs must be >= 0, got {self.epochs}")
        if self.batch_size <= 0:
            raise BadHyperparams(f"batch_size must be positive, got {self.batch_size}")
        if self.learning_rate <= 0:
            raise BadHyperparams(
                f"learning_rate must be positive, got {self.learning_rate}"
            )
        if self.optimizer not in ("sgd", "adam"):
            raise BadHyperparams(f"optimizer must be 'sgd' or 'adam', got {self.optimizer!r}")


class SGD:
    def __init__(self, learning_rate: float):
        self.learning_rate = learning_rate

    def step(self, net: DenseNetwork, grads) -> None:
        _check_grads(net, grads)
        for layer, (dw, db) in zip(net.layers, grads):
            if layer.frozen:
                continue
            layer.weights -= self.learning_rate * dw
            layer.biases -= self.learning_rate * db


class Adam:
    """Bias-corrected first/second moment update."""

    def __init__(
        self,
        learning_rate: float,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ):
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self._m = None
        self._v = None

    def _init_state(self, net: DenseNetwork) -> None:
        self._m = [
            (np.zeros_like(l.weights), np.zeros_like(l.biases)) for l in net.layers
        ]
        self._v = [
            (np.zeros_like(l.weights), np.zeros_like(l.biases)) for l in net.layers
        ]

    def step(self, net: DenseNetwork, grads) -> None:
        _check_grads(net, grads)
        if self._m is None:
            self._init_state(net)
        self.t += 1
        bc1 = 1.0 - self.beta1**self.t
        bc2 = 1.0 - self.beta2**self.t
        for i, (layer, (dw, db)) in enumerate(zip(net.layers, grads)):
            if layer.frozen:
                continue
            for param, grad, m, v in (
                (layer.weights, dw, self._m[i][0], self._v[i][0]),
                (layer.biases, db, self._m[i][1], self._v[i][1]),
            ):
                m *= self.beta1
                m += (1.0 - self.beta1) * grad
                v *= self.beta2
                v += (1.0 - self.beta2) * grad * grad
                param -= self.learning_rate * (m / bc1) / (np.sqrt(v / bc2) + self.eps)


def make_optimizer(config: TrainConfig):
    if config.optimizer == "sgd":
        return SGD(config.learning_rate)
    return Adam(config.learning_rate, config.beta1, config.beta2, config.eps)


def _check_grads(net: DenseNetwork, grads) -> None:
    if len(grads) != len(net.layers):
        raise DimensionMismatch(
            f"{len(grads)} gradients for {len(net.layers)} layers"
        )
    for layer, (dw, db) in zip(net.layers, grads):
        if dw.shape != layer.weights.shape or db.shape != layer.biases.shape:
            raise DimensionMismatch("gradient shapes do not match parameters")
