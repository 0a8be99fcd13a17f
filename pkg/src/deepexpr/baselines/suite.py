"""Fixed comparison suite: five classifiers on shared PCA scores.

Every method sees the same preprocessing: min-max scaling fitted on the
training split only, then projection onto the top principal components
of the scaled training matrix. Only the classifier on top differs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..data import (
    ExpressionDataset,
    LabelVocabulary,
    apply_minmax,
    encode_labels,
    fit_minmax,
    vocabulary_from_labels,
)
from ..errors import BadHyperparams, MissingLabels
from ..evaluate import binary_metrics, confusion_matrix
from ..nn import TrainConfig, forward, init_glorot, train_network
from ..seeding import derive_seed
from ..transfer import predict_ids
from .forest import ForestParams, fit_forest, forest_predict
from .knn import knn_predict
from .lda import fit_lda, lda_predict
from .pca import fit_pca, pca_transform

SUITE_METHODS = (
    "PCA-LDA",
    "PCA-Neural Network",
    "PCA-K Nearest Neighbor",
    "PCA-Random Forest",
    "PCA-Extremely Randomized Tree",
)

DEFAULT_PCA_COMPONENTS = 40

_STREAM_NN = 1
_STREAM_FOREST = 2
_STREAM_EXTRA = 3


@dataclass(frozen=True)
class BaselineResult:
    method: str
    accuracy: float | None
    fpr: float | None
    fnr: float | None


def fit_pca_nn(
    z: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    hidden_widths: tuple[int, ...] = (64,),
    config: TrainConfig | None = None,
    seed: int = 0,
):
    """Small ReLU classifier on component scores, trained from scratch."""
    if n_classes < 2:
        raise BadHyperparams(f"need at least 2 classes, got {n_classes}")
    if config is None:
        config = TrainConfig(epochs=200, seed=seed)
    output_dim = 1 if n_classes == 2 else n_classes
    dims = [z.shape[1], *hidden_widths, output_dim]
    activations = ["relu"] * len(hidden_widths)
    activations.append("sigmoid" if output_dim == 1 else "softmax")
    net = init_glorot(dims, seed=seed, activations=activations)
    if output_dim == 1:
        targets = y.astype(np.float64).reshape(-1, 1)
    else:
        targets = np.zeros((y.shape[0], n_classes))
        targets[np.arange(y.shape[0]), y] = 1.0
    train_network(net, z, targets, config, loss="classification")
    return net


def _result_for(method: str, y_true, y_pred, n_classes: int) -> BaselineResult:
    c = confusion_matrix(y_true, y_pred, n_classes)
    total = int(c.sum())
    accuracy = float(np.trace(c)) / total if total else None
    fpr = fnr = None
    if n_classes == 2:
        rates = binary_metrics(c, positive_class=1)
        fpr, fnr = rates["fpr"], rates["fnr"]
    return BaselineResult(method=method, accuracy=accuracy, fpr=fpr, fnr=fnr)


def run_baseline_suite(
    train: ExpressionDataset,
    test: ExpressionDataset,
    task: str = "binary",
    vocab: LabelVocabulary | None = None,
    n_components: int = DEFAULT_PCA_COMPONENTS,
    knn_k: int = 5,
    n_trees: int = 100,
    nn_hidden_widths: tuple[int, ...] = (64,),
    nn_config: TrainConfig | None = None,
    log2: bool = False,
    seed: int = 0,
) -> list[BaselineResult]:
    """Run all five methods; one result row per method, in a fixed order."""
    if train.labels is None or test.labels is None:
        raise MissingLabels("suite needs labeled train and test splits")
    if vocab is None:
        vocab = vocabulary_from_labels(train.labels)
    y_train = encode_labels(train, vocab, mode=task)
    y_test = encode_labels(test, vocab, mode=task)
    n_classes = 2 if task == "binary" else len(vocab.classes)

    scaler = fit_minmax(train, log2=log2)
    x_train = apply_minmax(scaler, train).values
    x_test = apply_minmax(scaler, test).values
    k = min(n_components, x_train.shape[0] - 1, x_train.shape[1])
    pca = fit_pca(x_train, k)
    z_train = pca_transform(pca, x_train)
    z_test = pca_transform(pca, x_test)

    results = []

    lda = fit_lda(z_train, y_train)
    results.append(
        _result_for(SUITE_METHODS[0], y_test, lda_predict(lda, z_test), n_classes)
    )

    nn = fit_pca_nn(
        z_train,
        y_train,
        n_classes,
        hidden_widths=nn_hidden_widths,
        config=nn_config,
        seed=derive_seed(seed, _STREAM_NN),
    )
    probs = forward(nn, z_test).output
    results.append(
        _result_for(SUITE_METHODS[1], y_test, predict_ids(probs), n_classes)
    )

    results.append(
        _result_for(
            SUITE_METHODS[2],
            y_test,
            knn_predict(z_train, y_train, z_test, k=knn_k),
            n_classes,
        )
    )

    params = ForestParams(n_trees=n_trees)
    rf = fit_forest(
        z_train,
        y_train,
        mode="random_forest",
        params=params,
        seed=derive_seed(seed, _STREAM_FOREST),
    )
    results.append(
        _result_for(SUITE_METHODS[3], y_test, forest_predict(rf, z_test), n_classes)
    )

    et = fit_forest(
        z_train,
        y_train,
        mode="extra_trees",
        params=params,
        seed=derive_seed(seed, _STREAM_EXTRA),
    )
    results.append(
        _result_for(SUITE_METHODS[4], y_test, forest_predict(et, z_test), n_classes)
    )

    return results


def _csv_cell(value: float | None) -> str:
    return "NA" if value is None else repr(float(value))


def render_suite_csv(results: list[BaselineResult]) -> str:
    lines = ["method,accuracy,fpr,fnr"]
    for r in results:
        lines.append(
            f"{r.method},{_csv_cell(r.accuracy)},{_csv_cell(r.fpr)},{_csv_cell(r.fnr)}"
        )
    return "\n".join(lines) + "\n"


def render_suite_table(results: list[BaselineResult]) -> str:
    """Percent columns aligned under method names, NA where undefined."""

    def cell(value: float | None) -> str:
        return "NA" if value is None else f"{100.0 * value:.2f}"

    width = max(len("method"), max(len(r.method) for r in results))
    header = f"{'method'.ljust(width)}  accuracy(%)  FPR(%)  FNR(%)"
    lines = [header, "-" * len(header)]
    for r in results:
        lines.append(
            f"{r.method.ljust(width)}  {cell(r.accuracy):>11}"
            f"  {cell(r.fpr):>6}  {cell(r.fnr):>6}"
        )
    return "\n".join(lines) + "\n"
