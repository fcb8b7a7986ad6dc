"""Model checkpoint container round trips."""

import struct

import numpy as np
import pytest

from gdvkit import generate_clusters, two_cluster_spec
from gdvkit.errors import BadMagic, TruncatedFile, UnsupportedVersion
from gdvkit.nets import (
    DbnModel,
    MlpConfig,
    load_model,
    mlp_train,
    rbm_train_cd,
    save_model,
)
from gdvkit.nets.checkpoint import model_kind


@pytest.fixture(scope="module")
def trained_mlp():
    data = generate_clusters(two_cluster_spec(0.4, n_per_class=30, seed=0))
    return mlp_train(MlpConfig(layer_widths=(2, 5, 2), epochs=2, seed=1), data)


@pytest.fixture(scope="module")
def trained_dbn():
    data = np.random.default_rng(0).random((20, 6))
    rbm1 = rbm_train_cd(6, 4, data, epochs=2, learning_rate=0.1, seed=0)
    rbm2 = rbm_train_cd(4, 3, np.random.default_rng(1).random((20, 4)),
                        epochs=2, learning_rate=0.1, seed=0)
    return DbnModel(rbms=[rbm1, rbm2])


class TestMlpCheckpoint:
    def test_round_trip_bit_exact(self, tmp_path, trained_mlp):
        path = tmp_path / "model.gdvm"
        save_model(path, trained_mlp)
        back = load_model(path)
        assert back.layer_widths == trained_mlp.layer_widths
        for a, b in zip(trained_mlp.weights, back.weights):
            np.testing.assert_array_equal(a, b)
        for a, b in zip(trained_mlp.biases, back.biases):
            np.testing.assert_array_equal(a, b)

    def test_kind_probe(self, tmp_path, trained_mlp):
        path = tmp_path / "model.gdvm"
        save_model(path, trained_mlp)
        assert model_kind(path) == "mlp"


class TestDbnCheckpoint:
    def test_round_trip_bit_exact(self, tmp_path, trained_dbn):
        path = tmp_path / "model.gdvm"
        save_model(path, trained_dbn)
        back = load_model(path)
        assert back.layer_widths == trained_dbn.layer_widths
        for a, b in zip(trained_dbn.rbms, back.rbms):
            np.testing.assert_array_equal(a.weights, b.weights)
            np.testing.assert_array_equal(a.visible_bias, b.visible_bias)
            np.testing.assert_array_equal(a.hidden_bias, b.hidden_bias)

    def test_kind_probe(self, tmp_path, trained_dbn):
        path = tmp_path / "model.gdvm"
        save_model(path, trained_dbn)
        assert model_kind(path) == "dbn"


class TestFailureModes:
    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.gdvm"
        path.write_bytes(b"XXXX" + struct.pack("<III", 1, 0, 0))
        with pytest.raises(BadMagic):
            load_model(path)

    def test_unsupported_version(self, tmp_path):
        path = tmp_path / "v9.gdvm"
        path.write_bytes(b"GDVM" + struct.pack("<III", 9, 0, 0))
        with pytest.raises(UnsupportedVersion):
            load_model(path)

    def test_truncated(self, tmp_path, trained_mlp):
        path = tmp_path / "model.gdvm"
        save_model(path, trained_mlp)
        blob = path.read_bytes()
        path.write_bytes(blob[:-9])
        with pytest.raises(TruncatedFile):
            load_model(path)
