"""Mini-batch training loop shared by the autoencoder and the classifier heads."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DimensionMismatch, NonFiniteLoss
from .losses import classification_cross_entropy, reconstruction_cross_entropy
from .network import DenseNetwork, backward, forward
from .optim import TrainConfig, make_optimizer

LOSS_KINDS = ("reconstruction", "classification")


@dataclass
class TrainHistory:
    train_loss: list[float] = field(default_factory=list)
    val_loss: list[float] | None = None

    def __len__(self) -> int:
        return len(self.train_loss)


def evaluate_loss(net: DenseNetwork, x: np.ndarray, targets: np.ndarray, loss: str) -> float:
    out = forward(net, x).output
    if loss == "reconstruction":
        value, _ = reconstruction_cross_entropy(targets, out)
    else:
        value, _ = classification_cross_entropy(targets, out)
    return value


def train_network(
    net: DenseNetwork,
    x: np.ndarray,
    targets: np.ndarray,
    config: TrainConfig,
    loss: str = "reconstruction",
    validation: tuple[np.ndarray, np.ndarray] | None = None,
    patience: int | None = None,
) -> TrainHistory:
    """Train in place and return the per-epoch loss history.

    The classification loss backpropagates from the logits (the joint
    softmax/sigmoid + cross-entropy form); the reconstruction loss from
    the output activations. With ``patience`` and a validation pair,
    training stops once validation loss has not improved for that many
    epochs and the best-validation parameters are restored.
    """
    if loss not in LOSS_KINDS:
        raise ValueError(f"loss must be one of {LOSS_KINDS}, got {loss!r}")
    x = np.asarray(x, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    if x.shape[0] != targets.shape[0]:
        raise DimensionMismatch(
            f"{x.shape[0]} inputs but {targets.shape[0]} target rows"
        )
    n = x.shape[0]
    if config.batch_size > n:
        raise DimensionMismatch(
            f"batch_size {config.batch_size} exceeds training set size {n}"
        )
    if patience is not None and validation is None:
        raise ValueError("patience requires a validation set")

    wrt = "logits" if loss == "classification" else "output"
    optimizer = make_optimizer(config)
    rng = np.random.default_rng(config.seed)
    history = TrainHistory(val_loss=[] if validation is not None else None)

    best_val = np.inf
    best_state = None
    wait = 0

    for epoch in range(config.epochs):
        order = rng.permutation(n) if config.shuffle_each_epoch else np.arange(n)
        total = 0.0
        for start in range(0, n, config.batch_size):
            idx = order[start : start + config.batch_size]
            record = forward(net, x[idx])
            if loss == "reconstruction":
                value, grad = reconstruction_cross_entropy(targets[idx], record.output)
            else:
                value, grad = classification_cross_entropy(targets[idx], record.output)
            if not np.isfinite(value):
                raise NonFiniteLoss(
                    f"loss became {value} at epoch {epoch}, batch offset {start}"
                )
            total += value * len(idx)
            grads = backward(net, record, grad, wrt=wrt)
            optimizer.step(net, grads)
        history.train_loss.append(total / n)

        if validation is not None:
            val = evaluate_loss(net, validation[0], validation[1], loss)
            history.val_loss.append(val)
            if patience is not None:
                if val < best_val:
                    best_val = val
                    best_state = [(l.weights.copy(), l.biases.copy()) for l in net.layers]
                    wait = 0
                else:
                    wait += 1
                    if wait >= patience:
                        for layer, (w, b) in zip(net.layers, best_state):
                            layer.weights[...] = w
                            layer.biases[...] = b
                        break

    return history
