import numpy as np
import pytest

from deepexpr.autoencoder import (
    AutoencoderSpec,
    build_autoencoder,
    encode,
    extract_encoder,
    load_autoencoder,
    save_autoencoder,
    train_autoencoder,
)
from deepexpr.errors import BadDims, DataError, SpecMismatch
from deepexpr.nn import TrainConfig, evaluate_loss, forward


def _low_rank_data(n=200, p=20, seed=9, sharp=4.0):
    """Rows living near a 2-dimensional nonlinear manifold, squashed to [0,1].

    ``sharp`` drives the tanh into saturation so most values sit near the
    interval ends, keeping the cross-entropy floor low.
    """
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(n, 2))
    mix = rng.normal(size=(2, p))
    raw = np.tanh(sharp * (z @ mix)) + 0.02 * rng.normal(size=(n, p))
    lo, hi = raw.min(axis=0), raw.max(axis=0)
    return (raw - lo) / (hi - lo)


def test_layer_sizes_mirror_the_encoder():
    spec = AutoencoderSpec(input_dim=500)
    assert spec.layer_sizes() == [500, 100, 50, 25, 50, 100, 500]
    assert spec.encoder_sizes() == [500, 100, 50, 25]


def test_layer_sizes_with_custom_widths():
    spec = AutoencoderSpec(input_dim=30, encoder_widths=(12, 8), code_dim=3)
    assert spec.layer_sizes() == [30, 12, 8, 3, 8, 12, 30]


def test_spec_rejects_bad_dims():
    with pytest.raises(BadDims):
        AutoencoderSpec(input_dim=0)
    with pytest.raises(BadDims):
        AutoencoderSpec(input_dim=10, code_dim=-1)
    with pytest.raises(BadDims):
        AutoencoderSpec(input_dim=10, encoder_widths=(5, 0))


def test_build_forces_sigmoid_output():
    spec = AutoencoderSpec(input_dim=10, encoder_widths=(6,), code_dim=2, activation="relu")
    net = build_autoencoder(spec, seed=0)
    assert [layer.activation for layer in net.layers] == [
        "relu",
        "relu",
        "relu",
        "sigmoid",
    ]
    assert net.layer_sizes() == [10, 6, 2, 6, 10]


def test_train_rejects_unscaled_inputs():
    spec = AutoencoderSpec(input_dim=3, encoder_widths=(2,), code_dim=1)
    net = build_autoencoder(spec, seed=0)
    with pytest.raises(DataError):
        train_autoencoder(net, np.array([[0.1, 1.2, 0.3]]), TrainConfig(epochs=1))


def test_training_reduces_reconstruction_loss():
    x = _low_rank_data()
    spec = AutoencoderSpec(input_dim=20, encoder_widths=(10,), code_dim=2)
    net = build_autoencoder(spec, seed=1)
    before = evaluate_loss(net, x, x, loss="reconstruction")
    history = train_autoencoder(
        net, x, TrainConfig(epochs=200, batch_size=32, learning_rate=1e-3, seed=2)
    )
    after = evaluate_loss(net, x, x, loss="reconstruction")
    assert after < before
    assert history.train_loss[-1] < history.train_loss[0]


def test_extract_encoder_copies_and_freezes():
    spec = AutoencoderSpec(input_dim=12, encoder_widths=(8, 5), code_dim=3)
    net = build_autoencoder(spec, seed=3)
    enc = extract_encoder(net, spec)
    assert enc.layer_sizes() == [12, 8, 5, 3]
    assert all(layer.frozen for layer in enc.layers)
    for copied, original in zip(enc.layers, net.layers):
        assert np.array_equal(copied.weights, original.weights)
        assert np.array_equal(copied.biases, original.biases)
    # the copy is detached from the source network
    enc.layers[0].weights[0, 0] += 1.0
    assert enc.layers[0].weights[0, 0] != net.layers[0].weights[0, 0]


def test_extract_encoder_checks_spec():
    spec = AutoencoderSpec(input_dim=12, encoder_widths=(8, 5), code_dim=3)
    net = build_autoencoder(spec, seed=3)
    other = AutoencoderSpec(input_dim=12, encoder_widths=(8, 4), code_dim=3)
    with pytest.raises(SpecMismatch):
        extract_encoder(net, other)


def test_encode_matches_manual_forward():
    spec = AutoencoderSpec(input_dim=7, encoder_widths=(4,), code_dim=2)
    net = build_autoencoder(spec, seed=4)
    enc = extract_encoder(net, spec)
    x = np.random.default_rng(5).uniform(0, 1, (6, 7))
    codes = encode(enc, x)
    assert codes.shape == (6, 2)
    assert np.array_equal(codes, forward(enc, x).output)


def test_save_load_round_trip(tmp_path):
    spec = AutoencoderSpec(input_dim=9, encoder_widths=(5,), code_dim=2)
    net = build_autoencoder(spec, seed=6)
    path = tmp_path / "ae.json"
    save_autoencoder(net, spec, path)
    loaded_net, loaded_spec = load_autoencoder(path)
    assert loaded_spec == spec
    for a, b in zip(loaded_net.layers, net.layers):
        assert np.array_equal(a.weights, b.weights)
        assert np.array_equal(a.biases, b.biases)
        assert a.activation == b.activation


def test_load_rejects_unknown_version(tmp_path):
    spec = AutoencoderSpec(input_dim=4, encoder_widths=(3,), code_dim=2)
    net = build_autoencoder(spec, seed=0)
    path = tmp_path / "ae.json"
    save_autoencoder(net, spec, path)
    doc = path.read_text().replace('"version": 1', '"version": 99')
    path.write_text(doc)
    with pytest.raises(DataError):
        load_autoencoder(path)


def test_small_manifold_compresses_well():
    """A 2-dim manifold in 20 features should lose most of its
    reconstruction loss through a 2-unit code."""
    x = _low_rank_data(n=200, p=20, seed=10)
    # push values toward the interval ends so the entropy floor is low
    x = 0.98 * x + 0.01
    spec = AutoencoderSpec(input_dim=20, encoder_widths=(12,), code_dim=2)
    net = build_autoencoder(spec, seed=11)
    history = train_autoencoder(
        net,
        x,
        TrainConfig(epochs=400, batch_size=32, learning_rate=2e-3, seed=12),
    )
    assert history.train_loss[-1] <= 0.5 * history.train_loss[0]
