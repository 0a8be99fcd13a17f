import numpy as np
import pytest

from deepexpr.baselines.suite import (
    SUITE_METHODS,
    fit_pca_nn,
    render_suite_csv,
    render_suite_table,
    run_baseline_suite,
)
from deepexpr.data import ExpressionDataset, stratified_split
from deepexpr.errors import BadHyperparams, MissingLabels
from deepexpr.nn import TrainConfig, forward
from deepexpr.transfer import predict_ids


def _labeled_blobs(seed=70, n_per=60, n_genes=12, n_classes=2, spread=0.4):
    """Well separated expression-like data with class labels."""
    rng = np.random.default_rng(seed)
    centers = rng.uniform(2.0, 8.0, size=(n_classes, n_genes))
    values = np.concatenate(
        [np.abs(centers[c] + spread * rng.normal(size=(n_per, n_genes))) for c in range(n_classes)]
    )
    names = ["normal", "tumor", "other"][:n_classes]
    labels = tuple(np.repeat(names, n_per))
    ids = tuple(f"s{i}" for i in range(n_per * n_classes))
    genes = tuple(f"g{j}" for j in range(n_genes))
    return ExpressionDataset(ids, genes, values, labels=labels)


def _fast_kwargs():
    return dict(
        n_components=5,
        n_trees=10,
        nn_config=TrainConfig(epochs=150, seed=0),
    )


def test_suite_returns_five_methods_in_order():
    train, test = stratified_split(_labeled_blobs(), 0.8, seed=0)
    results = run_baseline_suite(train, test, **_fast_kwargs())
    assert [r.method for r in results] == list(SUITE_METHODS)


def test_every_method_learns_separable_data():
    train, test = stratified_split(_labeled_blobs(seed=71), 0.8, seed=1)
    for r in run_baseline_suite(train, test, **_fast_kwargs()):
        assert r.accuracy is not None and r.accuracy >= 0.9, r


def test_binary_rows_carry_rates_multiclass_rows_do_not():
    train2, test2 = stratified_split(_labeled_blobs(seed=72), 0.8, seed=2)
    for r in run_baseline_suite(train2, test2, task="binary", **_fast_kwargs()):
        assert r.fpr is not None and r.fnr is not None

    data3 = _labeled_blobs(seed=73, n_classes=3)
    train3, test3 = stratified_split(data3, 0.8, seed=3)
    for r in run_baseline_suite(train3, test3, task="multiclass", **_fast_kwargs()):
        assert r.fpr is None and r.fnr is None
        assert r.accuracy is not None


def test_suite_requires_labels():
    train, test = stratified_split(_labeled_blobs(seed=74), 0.8, seed=4)
    with pytest.raises(MissingLabels):
        run_baseline_suite(train.without_labels(), test, **_fast_kwargs())


def test_same_seed_gives_identical_csv():
    train, test = stratified_split(_labeled_blobs(seed=75), 0.8, seed=5)
    a = render_suite_csv(run_baseline_suite(train, test, seed=9, **_fast_kwargs()))
    b = render_suite_csv(run_baseline_suite(train, test, seed=9, **_fast_kwargs()))
    assert a == b


def test_csv_layout():
    train, test = stratified_split(_labeled_blobs(seed=76), 0.8, seed=6)
    csv = render_suite_csv(run_baseline_suite(train, test, **_fast_kwargs()))
    lines = csv.splitlines()
    assert lines[0] == "method,accuracy,fpr,fnr"
    assert len(lines) == 6
    for line, method in zip(lines[1:], SUITE_METHODS):
        cells = line.split(",")
        assert cells[0] == method
        float(cells[1])  # parseable accuracy


def test_table_layout():
    train, test = stratified_split(_labeled_blobs(seed=77, n_classes=3), 0.8, seed=7)
    table = render_suite_table(
        run_baseline_suite(train, test, task="multiclass", **_fast_kwargs())
    )
    lines = table.splitlines()
    assert lines[0].split() == ["method", "accuracy(%)", "FPR(%)", "FNR(%)"]
    assert set(lines[1]) == {"-"}
    assert len(lines) == 7
    for line, method in zip(lines[2:], SUITE_METHODS):
        assert line.startswith(method)
        assert line.rstrip().endswith("NA")


def test_pca_nn_learns_component_scores():
    rng = np.random.default_rng(78)
    z = np.concatenate([rng.normal(size=(80, 4)) - 2.0, rng.normal(size=(80, 4)) + 2.0])
    y = np.array([0] * 80 + [1] * 80)
    net = fit_pca_nn(z, y, n_classes=2, config=TrainConfig(epochs=200, seed=1), seed=2)
    preds = predict_ids(forward(net, z).output)
    assert np.mean(preds == y) >= 0.95


def test_pca_nn_rejects_single_class():
    with pytest.raises(BadHyperparams):
        fit_pca_nn(np.zeros((4, 2)), np.zeros(4, dtype=int), n_classes=1)
