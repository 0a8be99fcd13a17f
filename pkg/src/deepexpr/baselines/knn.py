"""K-nearest-neighbor classification, Euclidean distance, majority vote."""

from __future__ import annotations

import numpy as np

from ..errors import BadHyperparams, DataError, DimensionMismatch, EmptyTrainingSet


def knn_predict(
    train_z: np.ndarray, train_y: np.ndarray, query_z: np.ndarray, k: int = 5
) -> np.ndarray:
    """Majority vote among the k closest training points.

    Distance ties are broken by the lower training index (stable sort);
    vote ties by the lowest class id.
    """
    train_z = np.asarray(train_z, dtype=np.float64)
    train_y = np.asarray(train_y, dtype=np.int64)
    query_z = np.asarray(query_z, dtype=np.float64)
    if train_z.shape[0] == 0:
        raise EmptyTrainingSet("no training points")
    if train_z.ndim != 2 or query_z.ndim != 2 or train_z.shape[1] != query_z.shape[1]:
        raise DimensionMismatch("train and query feature counts differ")
    if train_y.shape[0] != train_z.shape[0]:
        raise DimensionMismatch("one label per training row required")
    if not 1 <= k <= train_z.shape[0]:
        raise BadHyperparams(f"k must lie in [1, {train_z.shape[0]}], got {k}")
    if np.any(train_y < 0):
        raise DataError("class ids must be non-negative")

    n_classes = int(train_y.max()) + 1
    out = np.empty(query_z.shape[0], dtype=np.int64)
    for i, q in enumerate(query_z):
        dist = np.sum((train_z - q) ** 2, axis=1)
        nearest = np.argsort(dist, kind="stable")[:k]
        votes = np.bincount(train_y[nearest], minlength=n_classes)
        out[i] = int(np.argmax(votes))
    return out
