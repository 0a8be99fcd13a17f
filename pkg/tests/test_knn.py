from collections import Counter

import numpy as np
import pytest

from deepexpr.baselines.knn import knn_predict
from deepexpr.errors import (
    BadHyperparams,
    DataError,
    DimensionMismatch,
    EmptyTrainingSet,
)


def _oracle(train_z, train_y, query_z, k):
    """Pure-python re-derivation: sort by (distance, index), count votes,
    break vote ties by the smallest class id."""
    out = []
    for q in query_z:
        ranked = sorted(
            range(len(train_z)),
            key=lambda i: (float(np.sum((train_z[i] - q) ** 2)), i),
        )
        votes = Counter(int(train_y[i]) for i in ranked[:k])
        best = max(votes.values())
        out.append(min(c for c, v in votes.items() if v == best))
    return np.array(out)


def test_matches_oracle_on_random_data():
    rng = np.random.default_rng(40)
    for trial in range(20):
        n = int(rng.integers(5, 30))
        p = int(rng.integers(1, 6))
        train_z = rng.normal(size=(n, p))
        train_y = rng.integers(0, 4, n)
        query_z = rng.normal(size=(7, p))
        k = int(rng.integers(1, n + 1))
        got = knn_predict(train_z, train_y, query_z, k=k)
        assert got.tolist() == _oracle(train_z, train_y, query_z, k).tolist()


def test_distance_tie_goes_to_lower_index():
    # both training points sit at distance 1 from the query
    train_z = np.array([[1.0], [-1.0]])
    train_y = np.array([3, 1])
    assert knn_predict(train_z, train_y, np.array([[0.0]]), k=1).tolist() == [3]
    # swap rows: the other class now owns the lower index
    assert knn_predict(train_z[::-1], train_y[::-1], np.array([[0.0]]), k=1).tolist() == [1]


def test_vote_tie_goes_to_lowest_class_id():
    train_z = np.array([[1.0], [2.0], [3.0], [4.0]])
    train_y = np.array([2, 2, 0, 0])
    # k=4: two votes each for classes 0 and 2
    assert knn_predict(train_z, train_y, np.array([[2.5]]), k=4).tolist() == [0]


def test_duplicated_points_follow_oracle():
    train_z = np.array([[0.0, 0.0]] * 3 + [[1.0, 1.0]] * 3)
    train_y = np.array([0, 1, 1, 2, 2, 2])
    query_z = np.array([[0.0, 0.0], [1.0, 1.0], [0.5, 0.5]])
    got = knn_predict(train_z, train_y, query_z, k=3)
    assert got.tolist() == _oracle(train_z, train_y, query_z, 3).tolist()


def test_k_equals_one_memorizes_training_points():
    rng = np.random.default_rng(41)
    train_z = rng.normal(size=(15, 3))
    train_y = rng.integers(0, 5, 15)
    assert knn_predict(train_z, train_y, train_z, k=1).tolist() == train_y.tolist()


def test_k_bounds():
    z = np.zeros((4, 2))
    y = np.zeros(4, dtype=int)
    with pytest.raises(BadHyperparams):
        knn_predict(z, y, z, k=0)
    with pytest.raises(BadHyperparams):
        knn_predict(z, y, z, k=5)


def test_shape_validation():
    with pytest.raises(DimensionMismatch):
        knn_predict(np.zeros((4, 2)), np.zeros(4, dtype=int), np.zeros((3, 3)), k=1)
    with pytest.raises(DimensionMismatch):
        knn_predict(np.zeros((4, 2)), np.zeros(3, dtype=int), np.zeros((3, 2)), k=1)


def test_empty_training_set():
    with pytest.raises(EmptyTrainingSet):
        knn_predict(np.zeros((0, 2)), np.zeros(0, dtype=int), np.zeros((1, 2)), k=1)


def test_negative_class_ids_rejected():
    with pytest.raises(DataError):
        knn_predict(np.zeros((2, 1)), np.array([0, -1]), np.zeros((1, 1)), k=1)
