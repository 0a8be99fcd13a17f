"""Random forest and extremely randomized trees with Gini splits.

random_forest: bootstrap rows, best Gini split over candidate thresholds
(midpoints of consecutive distinct values) of a feature subsample.
extra_trees: no bootstrap, one uniformly random threshold per sampled
feature, best of those by Gini.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import BadHyperparams, DataError, DimensionMismatch

MODES = ("random_forest", "extra_trees")


@dataclass(frozen=True)
class ForestParams:
    n_trees: int = 100
    max_depth: int | None = None
    max_features: int | str | None = "sqrt"
    min_samples_split: int = 2

    def __post_init__(self):
        if self.n_trees < 1:
            raise BadHyperparams(f"n_trees must be >= 1, got {self.n_trees}")
        if self.max_depth is not None and self.max_depth < 1:
            raise BadHyperparams(f"max_depth must be >= 1, got {self.max_depth}")
        if self.min_samples_split < 2:
            raise BadHyperparams("min_samples_split must be >= 2")
        if isinstance(self.max_features, str) and self.max_features != "sqrt":
            raise BadHyperparams(f"max_features string must be 'sqrt', got {self.max_features!r}")
        if isinstance(self.max_features, int) and self.max_features < 1:
            raise BadHyperparams("max_features must be >= 1")

    def resolve_max_features(self, p: int) -> int:
        if self.max_features is None:
            return p
        if self.max_features == "sqrt":
            return max(1, int(np.sqrt(p)))
        return min(p, self.max_features)


@dataclass
class TreeNode:
    counts: np.ndarray  # class counts of the node's training samples
    feature: int | None = None
    threshold: float = 0.0
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.feature is None


@dataclass
class Tree:
    root: TreeNode
    sample_indices: np.ndarray  # rows (of the fitting matrix) this tree saw


@dataclass
class ForestModel:
    trees: list[Tree]
    mode: str
    params: ForestParams
    n_classes: int


def _gini(counts: np.ndarray) -> float:
    n = counts.sum()
    if n == 0:
        return 0.0
    frac = counts / n
    return 1.0 - float(np.sum(frac * frac))


def _grow(
    X: np.ndarray,
    y: np.ndarray,
    indices: np.ndarray,
    depth: int,
    rng: np.random.Generator,
    mode: str,
    params: ForestParams,
    n_classes: int,
    m_features: int,
) -> TreeNode:
    counts = np.bincount(y[indices], minlength=n_classes)
    node = TreeNode(counts=counts)
    if (
        len(indices) < params.min_samples_split
        or np.count_nonzero(counts) <= 1
        or (params.max_depth is not None and depth >= params.max_depth)
    ):
        return node

    features = rng.choice(X.shape[1], size=m_features, replace=False)
    best_score = np.inf
    best_feature = None
    best_threshold = 0.0
    n_node = len(indices)
    for f in features:
        col = X[indices, f]
        if mode == "random_forest":
            values = np.unique(col)
            if values.size < 2:
                continue
            thresholds = (values[:-1] + values[1:]) / 2.0
        else:
            lo, hi = col.min(), col.max()
            if lo == hi:
                continue
            thresholds = np.array([rng.uniform(lo, hi)])
        for t in thresholds:
            left_mask = col <= t
            n_left = int(left_mask.sum())
            if n_left == 0 or n_left == n_node:
                continue
            left_counts = np.bincount(y[indices[left_mask]], minlength=n_classes)
            right_counts = counts - left_counts
            score = (
                n_left * _gini(left_counts)
                + (n_node - n_left) * _gini(right_counts)
            ) / n_node
            if score < best_score:
                best_score = score
                best_feature = int(f)
                best_threshold = float(t)

    if best_feature is None:
        return node
    col = X[indices, best_feature]
    left_idx = indices[col <= best_threshold]
    right_idx = indices[col > best_threshold]
    node.feature = best_feature
    node.threshold = best_threshold
    node.left = _grow(X, y, left_idx, depth + 1, rng, mode, params, n_classes, m_features)
    node.right = _grow(X, y, right_idx, depth + 1, rng, mode, params, n_classes, m_features)
    return node


def fit_forest(
    Z: np.ndarray,
    y: np.ndarray,
    mode: str = "random_forest",
    params: ForestParams | None = None,
    seed: int = 0,
) -> ForestModel:
    """Grow the ensemble; per-tree randomness is derived from the seed so
    tree i is reproducible independent of how many trees are grown."""
    if mode not in MODES:
        raise BadHyperparams(f"mode must be one of {MODES}, got {mode!r}")
    params = params or ForestParams()
    Z = np.asarray(Z, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if Z.ndim != 2 or Z.shape[0] != y.shape[0]:
        raise DimensionMismatch("Z must be n x k with one label per row")
    if Z.shape[0] < 2:
        raise DataError(f"need >= 2 samples, got {Z.shape[0]}")
    if np.any(y < 0):
        raise DataError("class ids must be non-negative")

    n, p = Z.shape
    n_classes = int(y.max()) + 1
    m_features = params.resolve_max_features(p)
    tree_seeds = np.random.SeedSequence(seed).spawn(params.n_trees)

    trees = []
    for ss in tree_seeds:
        rng = np.random.default_rng(ss)
        if mode == "random_forest":
            sample_indices = rng.integers(0, n, size=n)
        else:
            sample_indices = np.arange(n)
        root = _grow(
            Z, y, sample_indices, 0, rng, mode, params, n_classes, m_features
        )
        trees.append(Tree(root=root, sample_indices=sample_indices))
    return ForestModel(trees=trees, mode=mode, params=params, n_classes=n_classes)


def _leaf_for(root: TreeNode, row: np.ndarray) -> TreeNode:
    node = root
    while not node.is_leaf:
        node = node.left if row[node.feature] <= node.threshold else node.right
    return node


def forest_predict(model: ForestModel, Z: np.ndarray) -> np.ndarray:
    """Majority vote over the trees' leaf classes, ties to lowest class id."""
    Z = np.asarray(Z, dtype=np.float64)
    if Z.ndim != 2:
        raise DimensionMismatch("Z must be 2-D")
    out = np.empty(Z.shape[0], dtype=np.int64)
    for i, row in enumerate(Z):
        votes = np.zeros(model.n_classes, dtype=np.int64)
        for tree in model.trees:
            leaf = _leaf_for(tree.root, row)
            votes[int(np.argmax(leaf.counts))] += 1
        out[i] = int(np.argmax(votes))
    return out
