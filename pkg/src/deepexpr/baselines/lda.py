"""Linear discriminant analysis with a pooled, ridge-regularized covariance."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ClassTooSmall, DataError, DimensionMismatch, SingularCovariance

DEFAULT_RIDGE = 1e-6


@dataclass(frozen=True)
class LDAModel:
    class_ids: np.ndarray  # original integer labels, ascending
    weights: np.ndarray  # n_classes x k, rows are inv(cov) @ mean_c
    intercepts: np.ndarray  # n_classes


def fit_lda(Z: np.ndarray, y: np.ndarray, ridge: float = DEFAULT_RIDGE) -> LDAModel:
    """Gaussian discriminant with shared within-class covariance.

    The pooled covariance gets ``ridge * trace/k`` added to its diagonal;
    pass ``ridge=0`` to disable, in which case a singular covariance
    raises instead.
    """
    Z = np.asarray(Z, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if Z.ndim != 2 or Z.shape[0] != y.shape[0]:
        raise DimensionMismatch("Z must be n x k with one label per row")
    classes = np.unique(y)
    if classes.size < 2:
        raise DataError(f"LDA needs >= 2 classes, got {classes.size}")
    n, k = Z.shape

    means = np.empty((classes.size, k))
    pooled = np.zeros((k, k))
    priors = np.empty(classes.size)
    for i, cls in enumerate(classes):
        rows = Z[y == cls]
        if rows.shape[0] < 2:
            raise ClassTooSmall(f"class {cls} has {rows.shape[0]} sample(s), need >= 2")
        means[i] = rows.mean(axis=0)
        centered = rows - means[i]
        pooled += centered.T @ centered
        priors[i] = rows.shape[0] / n
    pooled /= n - classes.size
    if ridge > 0:
        pooled = pooled + (ridge * np.trace(pooled) / k) * np.eye(k)

    try:
        solved = np.linalg.solve(pooled, means.T).T  # rows: inv(cov) @ mean_c
    except np.linalg.LinAlgError:
        raise SingularCovariance(
            "pooled covariance is singular; enable the ridge term"
        ) from None
    intercepts = -0.5 * np.einsum("ij,ij->i", means, solved) + np.log(priors)
    return LDAModel(class_ids=classes, weights=solved, intercepts=intercepts)


def lda_predict(model: LDAModel, Z: np.ndarray) -> np.ndarray:
    """argmax of the linear discriminants, ties to the lowest class id."""
    Z = np.asarray(Z, dtype=np.float64)
    if Z.ndim != 2 or Z.shape[1] != model.weights.shape[1]:
        raise DimensionMismatch(f"Z must be n x {model.weights.shape[1]}")
    scores = Z @ model.weights.T + model.intercepts
    return model.class_ids[np.argmax(scores, axis=1)]
