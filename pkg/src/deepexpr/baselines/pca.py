"""Principal component analysis sized for wide expression matrices.

With tens of thousands of genes and a few thousand samples the p x p
covariance is infeasible, so when p > n the top components come from the
n x n Gram matrix of the centered data; otherwise from a thin SVD. Both
routes agree up to per-component sign, which is fixed by making the
largest-magnitude loading positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import BadHyperparams, DimensionMismatch

# eigenvalues below this fraction of the largest count as zero
RANK_TOL = 1e-12


@dataclass(frozen=True)
class PCAModel:
    mean: np.ndarray  # p
    components: np.ndarray  # k x p, orthonormal rows
    eigenvalues: np.ndarray  # k, non-increasing, non-negative
    requested_k: int

    @property
    def k(self) -> int:
        return self.components.shape[0]

    @property
    def rank_deficient(self) -> bool:
        """True when fewer than requested_k positive eigenvalues existed."""
        return self.k < self.requested_k


def _fix_signs(components: np.ndarray) -> np.ndarray:
    out = components.copy()
    for row in out:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0
    return out


def _positive_count(eigenvalues: np.ndarray) -> int:
    if eigenvalues.size == 0 or eigenvalues[0] <= 0:
        return 0
    return int(np.sum(eigenvalues > eigenvalues[0] * RANK_TOL))


def _fit_svd(centered: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    n = centered.shape[0]
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    eigenvalues = (s * s) / (n - 1)
    return eigenvalues[:k], vt[:k]

def _fit_gram(centered: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    n = centered.shape[0]
    gram = centered @ centered.T
    s, u = np.linalg.eigh(gram)  # ascending
    order = np.argsort(s)[::-1]
    s = np.maximum(s[order], 0.0)
    u = u[:, order]
    components = np.zeros((k, centered.shape[1]))
    for j in range(k):
        if s[j] > 0:
            components[j] = (centered.T @ u[:, j]) / np.sqrt(s[j])
    return s[:k] / (n - 1), components


def fit_pca(X: np.ndarray, k: int, route: str | None = None) -> PCAModel:
    """Top-k principal directions of the sample covariance.

    ``route`` forces "gram" or "svd"; by default gram is used when the
    matrix is wider than it is tall. If the data carry fewer than k
    positive eigenvalues the model is truncated to the achievable count
    (``rank_deficient`` flags it).
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise DimensionMismatch("X must be 2-D")
    n, p = X.shape
    if n < 2:
        raise BadHyperparams(f"PCA needs at least 2 samples, got {n}")
    if not 1 <= k <= min(n - 1, p):
        raise BadHyperparams(
            f"k must lie in [1, min(n-1, p)] = [1, {min(n - 1, p)}], got {k}"
        )
    if route is None:
        route = "gram" if p > n else "svd"
    if route not in ("gram", "svd"):
        raise ValueError(f"route must be 'gram' or 'svd', got {route!r}")

    mean = X.mean(axis=0)
    centered = X - mean
    if route == "gram":
        eigenvalues, components = _fit_gram(centered, k)
    else:
        eigenvalues, components = _fit_svd(centered, k)

    keep = _positive_count(eigenvalues)
    keep = min(keep, k)
    return PCAModel(
        mean=mean,
        components=_fix_signs(components[:keep]),
        eigenvalues=np.maximum(eigenvalues[:keep], 0.0),
        requested_k=k,
    )


def pca_transform(model: PCAModel, X: np.ndarray) -> np.ndarray:
    """(X - mean) projected onto the components; rows are samples."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.mean.shape[0]:
        raise DimensionMismatch(
            f"X has {X.shape[-1] if X.ndim else '?'} features, model expects {model.mean.shape[0]}"
        )
    return (X - model.mean) @ model.components.T


def pca_reconstruct(model: PCAModel, Z: np.ndarray) -> np.ndarray:
    """Back-projection of codes into feature space."""
    Z = np.asarray(Z, dtype=np.float64)
    if Z.ndim != 2 or Z.shape[1] != model.k:
        raise DimensionMismatch(f"codes must be n x {model.k}")
    return Z @ model.components + model.mean
