"""PCA-based reference classifiers and the fixed comparison suite."""

from .forest import (
    ForestModel,
    ForestParams,
    Tree,
    TreeNode,
    fit_forest,
    forest_predict,
)
from .knn import knn_predict
from .lda import LDAModel, fit_lda, lda_predict
from .pca import (
    PCAModel,
    fit_pca,
    pca_reconstruct,
    pca_transform,
)
from .suite import (
    DEFAULT_PCA_COMPONENTS,
    SUITE_METHODS,
    BaselineResult,
    fit_pca_nn,
    render_suite_csv,
    render_suite_table,
    run_baseline_suite,
)

__all__ = [
    "BaselineResult",
    "DEFAULT_PCA_COMPONENTS",
    "ForestModel",
    "ForestParams",
    "LDAModel",
    "PCAModel",
    "SUITE_METHODS",
    "Tree",
    "TreeNode",
    "fit_forest",
    "fit_lda",
    "fit_pca",
    "fit_pca_nn",
    "forest_predict",
    "knn_predict",
    "lda_predict",
    "pca_reconstruct",
    "pca_transform",
    "render_suite_csv",
    "render_suite_table",
    "run_baseline_suite",
]
