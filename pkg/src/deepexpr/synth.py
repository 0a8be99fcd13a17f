"""Synthetic expression matrices with class structure on a curved manifold.

Each class owns a Gaussian cluster in a small latent space. Latent points
pass through one shared random sigmoid layer, an affine map up to gene
dimension, and an exponential, so measured values are positive and sit on
a low-dimensional nonlinear surface. Multiplicative log-normal noise is
applied per value.

Knobs shaping difficulty: ``class_sep`` spreads the latent centers,
``nonlinearity_strength`` sharpens the sigmoid bend (near zero the map is
almost affine, large values saturate it), and ``output_scale`` widens the
per-gene dynamic range.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .data import ExpressionDataset
from .errors import BadSpec
from .nn.activations import sigmoid


def _default_names(n_classes: int) -> tuple[str, ...]:
    if n_classes == 1:
        return ("normal",)
    if n_classes == 2:
        return ("normal", "tumor")
    return ("normal",) + tuple(f"type{i:02d}" for i in range(1, n_classes))


@dataclass(frozen=True)
class SynthSpec:
    n_classes: int
    samples_per_class: tuple[int, ...]
    n_genes: int
    latent_dim: int = 5
    noise: float = 0.1
    nonlinearity_strength: float = 1.0
    class_sep: float = 2.0
    output_scale: float = 3.0
    class_names: tuple[str, ...] | None = None
    seed: int = 0

    def __post_init__(self):
        if isinstance(self.samples_per_class, int):
            object.__setattr__(
                self,
                "samples_per_class",
                (self.samples_per_class,) * self.n_classes,
            )
        else:
            object.__setattr__(
                self, "samples_per_class", tuple(self.samples_per_class)
            )
        if self.class_names is not None:
            object.__setattr__(self, "class_names", tuple(self.class_names))
        if self.n_classes < 1:
            raise BadSpec(f"n_classes must be >= 1, got {self.n_classes}")
        if len(self.samples_per_class) != self.n_classes:
            raise BadSpec(
                f"samples_per_class has {len(self.samples_per_class)} entries "
                f"for {self.n_classes} classes"
            )
        if any(m < 1 for m in self.samples_per_class):
            raise BadSpec("every class needs at least one sample")
        if self.n_genes < 1 or self.latent_dim < 1:
            raise BadSpec("n_genes and latent_dim must be positive")
        if self.latent_dim > self.n_genes:
            raise BadSpec(
                f"latent_dim {self.latent_dim} exceeds n_genes {self.n_genes}"
            )
        if self.noise < 0 or self.class_sep < 0 or self.nonlinearity_strength < 0:
            raise BadSpec("noise, class_sep and nonlinearity_strength must be >= 0")
        if self.output_scale <= 0:
            raise BadSpec(f"output_scale must be positive, got {self.output_scale}")
        names = self.class_names
        if names is not None:
            if len(names) != self.n_classes:
                raise BadSpec(
                    f"{len(names)} class names for {self.n_classes} classes"
                )
            if len(set(names)) != len(names):
                raise BadSpec("class names must be distinct")

    @property
    def names(self) -> tuple[str, ...]:
        return (
            self.class_names
            if self.class_names is not None
            else _default_names(self.n_classes)
        )

    def to_dict(self) -> dict:
        return {
            "n_classes": self.n_classes,
            "samples_per_class": list(self.samples_per_class),
            "n_genes": self.n_genes,
            "latent_dim": self.latent_dim,
            "noise": self.noise,
            "nonlinearity_strength": self.nonlinearity_strength,
            "class_sep": self.class_sep,
            "output_scale": self.output_scale,
            "class_names": list(self.names),
            "seed": self.seed,
        }


def spec_from_dict(doc: dict) -> SynthSpec:
    known = {f for f in SynthSpec.__dataclass_fields__}
    extra = set(doc) - known
    if extra:
        raise BadSpec(f"unknown generator fields: {sorted(extra)}")
    return SynthSpec(**doc)


def generate(spec: SynthSpec) -> ExpressionDataset:
    """Draw one labeled dataset; identical specs give identical bytes.

    Draw order is fixed (centers, map weights, then samples class by
    class) so adding samples to a later class never disturbs earlier
    classes' world parameters.
    """
    rng = np.random.default_rng(spec.seed)
    hidden = max(2 * spec.latent_dim, 4)

    centers = spec.class_sep * rng.standard_normal((spec.n_classes, spec.latent_dim))
    a1 = rng.standard_normal((hidden, spec.latent_dim)) / np.sqrt(spec.latent_dim)
    b1 = rng.standard_normal(hidden)
    a2 = rng.standard_normal((spec.n_genes, hidden)) / np.sqrt(hidden)
    b2 = rng.standard_normal(spec.n_genes)

    blocks = []
    labels: list[str] = []
    names = spec.names
    for c in range(spec.n_classes):
        m = spec.samples_per_class[c]
        z = centers[c] + rng.standard_normal((m, spec.latent_dim))
        eps = rng.standard_normal((m, spec.n_genes))
        h = sigmoid(spec.nonlinearity_strength * (z @ a1.T + b1))
        # wide per-gene dynamic range, as in TPM measurements
        log_expr = spec.output_scale * (h @ a2.T + b2) + spec.noise * eps
        blocks.append(np.exp(log_expr))
        labels.extend([names[c]] * m)

    values = np.vstack(blocks)
    n = values.shape[0]
    width = max(4, len(str(n - 1)))
    sample_ids = tuple(f"s{i:0{width}d}" for i in range(n))
    gene_ids = tuple(f"g{j:05d}" for j in range(spec.n_genes))
    return ExpressionDataset(
        sample_ids=sample_ids,
        gene_ids=gene_ids,
        values=values,
        labels=tuple(labels),
    )
