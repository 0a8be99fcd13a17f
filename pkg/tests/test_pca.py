import numpy as np
import pytest

from deepexpr.baselines.pca import fit_pca, pca_reconstruct, pca_transform
from deepexpr.errors import BadHyperparams, DimensionMismatch


def _eigh_oracle(X, k):
    """Reference spectrum straight from the explicit covariance matrix.

    Deliberately the slow p x p route so it shares no code with fit_pca.
    """
    X = np.asarray(X, dtype=np.float64)
    centered = X - X.mean(axis=0)
    cov = centered.T @ centered / (X.shape[0] - 1)
    vals, vecs = np.linalg.eigh(cov)
    order = np.argsort(vals)[::-1]
    return vals[order][:k], vecs[:, order][:, :k].T


def _match_up_to_sign(got, want, tol=1e-8):
    assert got.shape == want.shape
    for g, w in zip(got, want):
        assert min(np.abs(g - w).max(), np.abs(g + w).max()) < tol


def test_matches_covariance_eigendecomposition_tall():
    X = np.random.default_rng(0).normal(size=(40, 12))
    model = fit_pca(X, 5)
    vals, vecs = _eigh_oracle(X, 5)
    assert np.allclose(model.eigenvalues, vals, atol=1e-8)
    _match_up_to_sign(model.components, vecs)


def test_matches_covariance_eigendecomposition_wide():
    X = np.random.default_rng(1).normal(size=(15, 60))
    model = fit_pca(X, 6)
    vals, vecs = _eigh_oracle(X, 6)
    assert np.allclose(model.eigenvalues, vals, atol=1e-8)
    _match_up_to_sign(model.components, vecs)


def test_gram_and_svd_routes_agree():
    X = np.random.default_rng(2).uniform(size=(20, 20))
    a = fit_pca(X, 7, route="gram")
    b = fit_pca(X, 7, route="svd")
    assert np.allclose(a.eigenvalues, b.eigenvalues, atol=1e-9)
    assert np.allclose(a.components, b.components, atol=1e-8)


def test_default_route_tracks_shape():
    wide = fit_pca(np.random.default_rng(3).normal(size=(10, 30)), 3)
    tall = fit_pca(np.random.default_rng(3).normal(size=(30, 10)), 3)
    forced_wide = fit_pca(np.random.default_rng(3).normal(size=(10, 30)), 3, route="gram")
    assert np.allclose(wide.components, forced_wide.components)
    assert tall.k == wide.k == 3


def test_components_are_orthonormal():
    X = np.random.default_rng(4).normal(size=(25, 18))
    model = fit_pca(X, 8)
    gram = model.components @ model.components.T
    assert np.allclose(gram, np.eye(8), atol=1e-10)


def test_eigenvalues_sorted_and_sign_convention():
    X = np.random.default_rng(5).normal(size=(30, 9))
    model = fit_pca(X, 6)
    assert np.all(np.diff(model.eigenvalues) <= 1e-12)
    for row in model.components:
        assert row[np.argmax(np.abs(row))] > 0


def test_rank_deficient_data_is_truncated():
    rng = np.random.default_rng(6)
    basis = rng.normal(size=(2, 10))
    X = rng.normal(size=(20, 2)) @ basis  # exactly rank 2
    model = fit_pca(X, 5)
    assert model.requested_k == 5
    assert model.k == 2
    assert model.rank_deficient


def test_full_rank_data_is_not_flagged():
    model = fit_pca(np.random.default_rng(7).normal(size=(12, 6)), 4)
    assert not model.rank_deficient


def test_k_bounds():
    X = np.random.default_rng(8).normal(size=(10, 4))
    with pytest.raises(BadHyperparams):
        fit_pca(X, 0)
    with pytest.raises(BadHyperparams):
        fit_pca(X, 5)  # p = 4 caps k
    with pytest.raises(BadHyperparams):
        fit_pca(np.random.default_rng(9).normal(size=(3, 10)), 3)  # n-1 = 2 caps k
    with pytest.raises(BadHyperparams):
        fit_pca(np.ones((1, 5)), 1)


def test_transform_centers_before_projection():
    X = np.random.default_rng(10).normal(size=(20, 5)) + 100.0
    model = fit_pca(X, 3)
    codes = pca_transform(model, X)
    assert np.allclose(codes.mean(axis=0), 0.0, atol=1e-9)
    manual = (X - model.mean) @ model.components.T
    assert np.array_equal(codes, manual)


def test_transform_checks_feature_count():
    model = fit_pca(np.random.default_rng(11).normal(size=(10, 6)), 2)
    with pytest.raises(DimensionMismatch):
        pca_transform(model, np.zeros((4, 5)))


def test_reconstruction_error_shrinks_with_k():
    X = np.random.default_rng(12).normal(size=(30, 10))
    errors = []
    for k in (1, 4, 8):
        model = fit_pca(X, k)
        back = pca_reconstruct(model, pca_transform(model, X))
        errors.append(np.mean((X - back) ** 2))
    assert errors[0] > errors[1] > errors[2]


def test_reconstruct_checks_code_width():
    model = fit_pca(np.random.default_rng(13).normal(size=(10, 6)), 3)
    with pytest.raises(DimensionMismatch):
        pca_reconstruct(model, np.zeros((4, 2)))


def test_rejects_non_2d_input():
    with pytest.raises(DimensionMismatch):
        fit_pca(np.zeros(10), 2)
