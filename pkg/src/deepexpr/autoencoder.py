"""Symmetric deep autoencoder and encoder extraction.

The default geometry is two encoder layers of 100 and 50 units around a
25-unit code, mirrored on the decode side, all sigmoid. Training
minimizes elementwise reconstruction cross-entropy on [0,1]-scaled
inputs; the trained encoder half is extracted frozen for transfer.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .errors import BadDims, DataError, MissingFile, SpecMismatch
from .nn import (
    DenseNetwork,
    TrainConfig,
    TrainHistory,
    forward,
    init_glorot,
    network_from_dict,
    network_to_dict,
    train_network,
)

AUTOENCODER_FORMAT_VERSION = 1


@dataclass(frozen=True)
class AutoencoderSpec:
    input_dim: int
    encoder_widths: tuple[int, ...] = (100, 50)
    code_dim: int = 25
    activation: str = "sigmoid"

    def __post_init__(self):
        object.__setattr__(self, "encoder_widths", tuple(self.encoder_widths))
        if self.input_dim <= 0 or self.code_dim <= 0:
            raise BadDims("input_dim and code_dim must be positive")
        if any(w <= 0 for w in self.encoder_widths):
            raise BadDims(f"encoder widths must be positive, got {self.encoder_widths}")

    def layer_sizes(self) -> list[int]:
        """input -> encoder widths -> code -> mirrored widths -> input."""
        widths = list(self.encoder_widths)
        return [self.input_dim, *widths, self.code_dim, *reversed(widths), self.input_dim]

    def encoder_sizes(self) -> list[int]:
        return [self.input_dim, *self.encoder_widths, self.code_dim]


def build_autoencoder(spec: AutoencoderSpec, seed: int) -> DenseNetwork:
    """Fresh Glorot-initialized autoencoder; final layer sigmoid so outputs
    stay inside (0,1) to match the scaled targets."""
    sizes = spec.layer_sizes()
    acts = [spec.activation] * (len(sizes) - 2) + ["sigmoid"]
    return init_glorot(sizes, seed=seed, activations=acts)


def train_autoencoder(
    net: DenseNetwork, train: np.ndarray, config: TrainConfig
) -> TrainHistory:
    """Mini-batch reconstruction training; inputs double as targets."""
    x = np.asarray(train, dtype=np.float64)
    if np.any(x < 0) or np.any(x > 1):
        raise DataError("autoencoder inputs must be scaled to [0, 1]")
    return train_network(net, x, x, config, loss="reconstruction")


def extract_encoder(net: DenseNetwork, spec: AutoencoderSpec) -> DenseNetwork:
    """Copy of the input -> code layers, every layer frozen."""
    if net.layer_sizes() != spec.layer_sizes():
        raise SpecMismatch(
            f"network sizes {net.layer_sizes()} do not match spec {spec.layer_sizes()}"
        )
    n_enc = len(spec.encoder_widths) + 1
    layers = [layer.copy() for layer in net.layers[:n_enc]]
    for layer in layers:
        layer.frozen = True
    return DenseNetwork(layers=layers)


def encode(encoder: DenseNetwork, data: np.ndarray) -> np.ndarray:
    """Deterministic forward pass to the code layer; rows are samples."""
    return forward(encoder, np.asarray(data, dtype=np.float64)).output


# ---------------------------------------------------------------------------
# serialization: network JSON plus a spec header

def save_autoencoder(net: DenseNetwork, spec: AutoencoderSpec, path: str | Path) -> None:
    doc = {
        "version": AUTOENCODER_FORMAT_VERSION,
        "spec": asdict(spec),
        "network": network_to_dict(net),
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def load_autoencoder(path: str | Path) -> tuple[DenseNetwork, AutoencoderSpec]:
    path = Path(path)
    if not path.exists():
        raise MissingFile(str(path))
    doc = json.loads(path.read_text())
    if doc.get("version") != AUTOENCODER_FORMAT_VERSION:
        raise DataError(f"unsupported autoencoder version {doc.get('version')!r}")
    raw = doc["spec"]
    spec = AutoencoderSpec(
        input_dim=int(raw["input_dim"]),
        encoder_widths=tuple(int(w) for w in raw["encoder_widths"]),
        code_dim=int(raw["code_dim"]),
        activation=raw["activation"],
    )
    return network_from_dict(doc["network"]), spec
