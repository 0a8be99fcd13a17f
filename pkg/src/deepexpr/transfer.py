"""Frozen-encoder transfer classifier.

The trained encoder is kept fixed and a small ReLU head is stacked on the
code layer: a single sigmoid output for detection (2 classes), a softmax
output for typing. Only the head's parameters move during training.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .data import LabelVocabulary
from .errors import BadDims, DataError, EncoderNotFrozen, MissingFile
from .nn import (
    DenseLayer,
    DenseNetwork,
    TrainConfig,
    TrainHistory,
    forward,
    init_glorot,
    network_from_dict,
    network_to_dict,
    train_network,
)

CLASSIFIER_FORMAT_VERSION = 1


@dataclass(frozen=True)
class ClassifierSpec:
    n_classes: int
    head_hidden_widths: tuple[int, ...] = (64,)
    head_activation: str = "relu"

    def __post_init__(self):
        object.__setattr__(self, "head_hidden_widths", tuple(self.head_hidden_widths))
        if self.n_classes < 2:
            raise BadDims(f"n_classes must be >= 2, got {self.n_classes}")
        if any(w <= 0 for w in self.head_hidden_widths):
            raise BadDims("head widths must be positive")

    @property
    def output_dim(self) -> int:
        # logistic head for the binary task, softmax row otherwise
        return 1 if self.n_classes == 2 else self.n_classes

    @property
    def output_activation(self) -> str:
        return "sigmoid" if self.n_classes == 2 else "softmax"


def build_transfer_classifier(
    encoder: DenseNetwork, spec: ClassifierSpec, seed: int
) -> DenseNetwork:
    """Frozen encoder layers followed by a freshly initialized head."""
    if not all(layer.frozen for layer in encoder.layers):
        raise EncoderNotFrozen("all encoder layers must be frozen")
    head_sizes = [encoder.output_dim, *spec.head_hidden_widths, spec.output_dim]
    head_acts = [spec.head_activation] * len(spec.head_hidden_widths) + [
        spec.output_activation
    ]
    head = init_glorot(head_sizes, seed=seed, activations=head_acts)
    return DenseNetwork(layers=[l.copy() for l in encoder.layers] + head.layers)


def _targets_for(y: np.ndarray, output_dim: int) -> np.ndarray:
    y = np.asarray(y, dtype=np.int64)
    if output_dim == 1:
        if not np.all((y == 0) | (y == 1)):
            raise DataError("binary targets must be 0/1")
        return y.astype(np.float64).reshape(-1, 1)
    if np.any(y < 0) or np.any(y >= output_dim):
        raise DataError(f"class ids must lie in [0, {output_dim})")
    onehot = np.zeros((len(y), output_dim))
    onehot[np.arange(len(y)), y] = 1.0
    return onehot


def _stratified_holdout(y: np.ndarray, fraction: float, seed: int):
    """Per-class holdout indices; classes too small to contribute a float
    fraction of one sample stay entirely in the training part."""
    rng = np.random.default_rng([seed, 0x5EED])
    train_idx, val_idx = [], []
    for cls in np.unique(y):
        idx = np.flatnonzero(y == cls)
        idx = idx[rng.permutation(len(idx))]
        n_val = int(fraction * len(idx))
        val_idx.extend(idx[:n_val].tolist())
        train_idx.extend(idx[n_val:].tolist())
    return np.array(sorted(train_idx)), np.array(sorted(val_idx))


def train_classifier(
    net: DenseNetwork,
    x: np.ndarray,
    y: np.ndarray,
    config: TrainConfig,
    validation_fraction: float = 0.1,
    patience: int = 20,
) -> TrainHistory:
    """Supervised training of the head; frozen layers stay untouched.

    A stratified slice of the training data is held out for early
    stopping (patience epochs without validation improvement). Set
    ``validation_fraction=0`` to train the full epoch budget.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    output_dim = net.output_dim
    targets = _targets_for(y, output_dim)

    if validation_fraction > 0:
        tr, va = _stratified_holdout(y, validation_fraction, config.seed)
        if len(va) > 0 and len(tr) >= config.batch_size:
            return train_network(
                net,
                x[tr],
                targets[tr],
                config,
                loss="classification",
                validation=(x[va], targets[va]),
                patience=patience,
            )
    return train_network(net, x, targets, config, loss="classification")


def predict_ids(probs: np.ndarray) -> np.ndarray:
    """Class ids from model outputs.

    Softmax rows: argmax with ties to the lowest class id. Logistic
    output: probability >= 0.5 maps to class 1.
    """
    probs = np.asarray(probs, dtype=np.float64)
    if probs.ndim != 2:
        raise BadDims(f"expected a 2d probability array, got shape {probs.shape}")
    if probs.shape[1] == 1:
        return (probs[:, 0] >= 0.5).astype(np.int64)
    return np.argmax(probs, axis=1).astype(np.int64)


def predict(net: DenseNetwork, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(class ids, probabilities) for a batch of scaled feature rows."""
    probs = forward(net, np.asarray(x, dtype=np.float64)).output
    return predict_ids(probs), probs


# ---------------------------------------------------------------------------
# serialization: network JSON plus the label vocabulary

def save_classifier(
    net: DenseNetwork,
    vocab: LabelVocabulary,
    task: str,
    path: str | Path,
) -> None:
    doc = {
        "version": CLASSIFIER_FORMAT_VERSION,
        "task": task,
        "vocab": list(vocab.classes),
        "negative_class": vocab.negative_class,
        "network": network_to_dict(net),
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def load_classifier(path: str | Path) -> tuple[DenseNetwork, LabelVocabulary, str]:
    path = Path(path)
    if not path.exists():
        raise MissingFile(str(path))
    doc = json.loads(path.read_text())
    if doc.get("version") != CLASSIFIER_FORMAT_VERSION:
        raise DataError(f"unsupported classifier version {doc.get('version')!r}")
    vocab = LabelVocabulary(
        classes=tuple(doc["vocab"]), negative_class=doc["negative_class"]
    )
    return network_from_dict(doc["network"]), vocab, doc["task"]
