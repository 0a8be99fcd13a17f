"""Dense layers, forward/backward passes, initialization, serialization.

Weights are stored fan_in x fan_out so a batch flows as ``a @ W + b`` with
samples in rows. Backprop returns one (dW, db) pair per layer; frozen
layers get zero gradients but still pass error upstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from ..errors import (
    BadDims,
    DataError,
    DimensionMismatch,
    MissingFile,
    StaleActivationRecord,
)
from .activations import ACTIVATIONS, activation_backward, apply_activation

NETWORK_FORMAT_VERSION = 1


@dataclass
class DenseLayer:
    weights: np.ndarray  # fan_in x fan_out
    biases: np.ndarray  # fan_out
    activation: str
    frozen: bool = False

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        self.biases = np.asarray(self.biases, dtype=np.float64)
        if self.weights.ndim != 2 or self.biases.ndim != 1:
            raise DimensionMismatch("weights must be 2-D, biases 1-D")
        if self.weights.shape[1] != self.biases.shape[0]:
            raise DimensionMismatch(
                f"fan_out {self.weights.shape[1]} != bias length {self.biases.shape[0]}"
            )
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {self.activation!r}")
        if not (np.all(np.isfinite(self.weights)) and np.all(np.isfinite(self.biases))):
            raise DataError("layer parameters must be finite")

    @property
    def fan_in(self) -> int:
        return self.weights.shape[0]

    @property
    def fan_out(self) -> int:
        return self.weights.shape[1]

    def copy(self) -> "DenseLayer":
        return DenseLayer(
            weights=self.weights.copy(),
            biases=self.biases.copy(),
            activation=self.activation,
            frozen=self.frozen,
        )


@dataclass
class DenseNetwork:
    layers: list[DenseLayer] = field(default_factory=list)

    def __post_init__(self):
        for prev, nxt in zip(self.layers, self.layers[1:]):
            if prev.fan_out != nxt.fan_in:
                raise DimensionMismatch(
                    f"layer chain broken: fan_out {prev.fan_out} feeds fan_in {nxt.fan_in}"
                )

    @property
    def input_dim(self) -> int:
        return self.layers[0].fan_in

    @property
    def output_dim(self) -> int:
        return self.layers[-1].fan_out

    def layer_sizes(self) -> list[int]:
        return [self.input_dim] + [layer.fan_out for layer in self.layers]

    def copy(self) -> "DenseNetwork":
        return DenseNetwork(layers=[layer.copy() for layer in self.layers])


@dataclass
class ForwardRecord:
    """Intermediates of one forward pass, kept for backprop."""

    inputs: np.ndarray
    pre_activations: list[np.ndarray]
    activations: list[np.ndarray]

    @property
    def output(self) -> np.ndarray:
        return self.activations[-1]


def forward(net: DenseNetwork, batch: np.ndarray) -> ForwardRecord:
    """Run the batch through every layer, recording all intermediates."""
    a = np.asarray(batch, dtype=np.float64)
    if a.ndim != 2:
        raise DimensionMismatch(f"batch must be 2-D, got ndim={a.ndim}")
    if a.shape[1] != net.input_dim:
        raise DimensionMismatch(
            f"batch has {a.shape[1]} features, network expects {net.input_dim}"
        )
    zs: list[np.ndarray] = []
    activations: list[np.ndarray] = []
    for layer in net.layers:
        z = a @ layer.weights + layer.biases
        a = apply_activation(layer.activation, z)
        zs.append(z)
        activations.append(a)
    return ForwardRecord(inputs=np.asarray(batch, dtype=np.float64),
                         pre_activations=zs, activations=activations)


def backward(
    net: DenseNetwork,
    record: ForwardRecord,
    grad: np.ndarray,
    wrt: str = "output",
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Per-layer (dW, db) for the loss whose gradient at the top is ``grad``.

    ``wrt="output"``: grad is w.r.t. the final activations (the last
    layer's activation derivative is applied here).
    ``wrt="logits"``: grad is already w.r.t. the final pre-activations,
    as produced by the classification loss.
    """
    if wrt not in ("output", "logits"):
        raise ValueError(f"wrt must be 'output' or 'logits', got {wrt!r}")
    if len(record.activations) != len(net.layers):
        raise StaleActivationRecord(
            f"record has {len(record.activations)} layers, network has {len(net.layers)}"
        )
    for layer, z in zip(net.layers, record.pre_activations):
        if z.shape[1] != layer.fan_out:
            raise StaleActivationRecord("record shapes do not match the network")
    grad = np.asarray(grad, dtype=np.float64)
    if grad.shape != record.output.shape:
        raise StaleActivationRecord(
            f"gradient shape {grad.shape} != output shape {record.output.shape}"
        )

    grads: list[tuple[np.ndarray, np.ndarray]] = [None] * len(net.layers)
    delta = grad
    for i in range(len(net.layers) - 1, -1, -1):
        layer = net.layers[i]
        if i == len(net.layers) - 1 and wrt == "logits":
            dz = delta
        else:
            dz = activation_backward(
                layer.activation, delta, record.pre_activations[i], record.activations[i]
            )
        below = record.inputs if i == 0 else record.activations[i - 1]
        if layer.frozen:
            grads[i] = (
                np.zeros_like(layer.weights),
                np.zeros_like(layer.biases),
            )
        else:
            grads[i] = (below.T @ dz, dz.sum(axis=0))
        delta = dz @ layer.weights.T
    return grads


def init_glorot(
    dims: Sequence[int],
    seed: int,
    activations: Sequence[str] | str = "identity",
) -> DenseNetwork:
    """Network with Glorot-uniform weights (+-sqrt(6/(fan_in+fan_out))) and
    zero biases; deterministic for a given seed."""
    dims = list(dims)
    if len(dims) < 2:
        raise BadDims("need at least an input and an output size")
    if any(int(d) <= 0 for d in dims):
        raise BadDims(f"all sizes must be positive, got {dims}")
    n_layers = len(dims) - 1
    if isinstance(activations, str):
        acts = [activations] * n_layers
    else:
        acts = list(activations)
        if len(acts) != n_layers:
            raise BadDims(
                f"{len(acts)} activations for {n_layers} layers"
            )
    rng = np.random.default_rng(seed)
    layers = []
    for fan_in, fan_out, act in zip(dims[:-1], dims[1:], acts):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights = rng.uniform(-limit, limit, size=(fan_in, fan_out))
        layers.append(
            DenseLayer(weights=weights, biases=np.zeros(fan_out), activation=act)
        )
    return DenseNetwork(layers=layers)


# ---------------------------------------------------------------------------
# serialization

def network_to_dict(net: DenseNetwork) -> dict:
    return {
        "version": NETWORK_FORMAT_VERSION,
        "layers": [
            {
                "fan_in": layer.fan_in,
                "fan_out": layer.fan_out,
                "activation": layer.activation,
                "frozen": layer.frozen,
                "weights": layer.weights.ravel().tolist(),  # row-major
                "biases": layer.biases.tolist(),
            }
            for layer in net.layers
        ],
    }


def network_from_dict(doc: dict) -> DenseNetwork:
    if doc.get("version") != NETWORK_FORMAT_VERSION:
        raise DataError(f"unsupported network version {doc.get('version')!r}")
    layers = []
    for entry in doc["layers"]:
        fan_in, fan_out = int(entry["fan_in"]), int(entry["fan_out"])
        weights = np.array(entry["weights"], dtype=np.float64)
        if weights.size != fan_in * fan_out:
            raise DataError(
                f"layer has {weights.size} weights, expected {fan_in * fan_out}"
            )
        layers.append(
            DenseLayer(
                weights=weights.reshape(fan_in, fan_out),
                biases=np.array(entry["biases"], dtype=np.float64),
                activation=entry["activation"],
                frozen=bool(entry["frozen"]),
            )
        )
    return DenseNetwork(layers=layers)


def save_network(net: DenseNetwork, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(network_to_dict(net), indent=2, sort_keys=True) + "\n"
    )


def load_network(path: str | Path) -> DenseNetwork:
    path = Path(path)
    if not path.exists():
        raise MissingFile(str(path))
    return network_from_dict(json.loads(path.read_text()))
