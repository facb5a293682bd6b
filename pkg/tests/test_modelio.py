import json

import numpy as np
import pytest

from nninteract import CompositeModel, init_network, load_model, save_model
from nninteract.errors import ModelFileError
from nninteract.network import Scaler


def _model():
    main = init_network([3, 6, 4], seed=1)
    uni = [init_network([1, 3], seed=10 + i) for i in range(3)]
    inter = [((1, 3), init_network([2, 3], seed=20))]
    scaler = Scaler(x_mean=np.array([0.1, 0.2, 0.3]), x_std=np.array([1.0, 2.0, 3.0]),
                    y_mean=0.5, y_std=1.5)
    return CompositeModel(n_features=3, task="regression", main=main,
                          univariate=uni, interactions=inter, scaler=scaler)


def test_round_trip_bit_exact(tmp_path):
    model = _model()
    path = tmp_path / "model.json"
    save_model(model, path)
    loaded = load_model(path)
    for a, b in zip(model.networks(), loaded.networks()):
        for pa, pb in zip(a.parameters(), b.parameters()):
            assert np.array_equal(pa, pb)
        assert a.output_bias == b.output_bias
    assert loaded.interactions[0][0] == (1, 3)
    assert np.array_equal(loaded.scaler.x_mean, model.scaler.x_mean)
    assert loaded.scaler.y_std == model.scaler.y_std


def test_truncated_file_is_parse_error(tmp_path):
    path = tmp_path / "model.json"
    save_model(_model(), path)
    text = path.read_text()
    path.write_text(text[: len(text) // 2])
    with pytest.raises(ModelFileError):
        load_model(path)


def test_version_mismatch(tmp_path):
    path = tmp_path / "model.json"
    save_model(_model(), path)
    doc = json.loads(path.read_text())
    doc["format_version"] = 99
    path.write_text(json.dumps(doc))
    with pytest.raises(ModelFileError, match="format_version"):
        load_model(path)


def test_shape_inconsistency_names_layer(tmp_path):
    path = tmp_path / "model.json"
    save_model(_model(), path)
    doc = json.loads(path.read_text())
    doc["main"]["weights"][0] = [[1.0, 2.0]]   # contradicts layer_sizes [3, 6, 4]
    path.write_text(json.dumps(doc))
    with pytest.raises(ModelFileError, match="layer 1"):
        load_model(path)


def test_not_a_model_file(tmp_path):
    path = tmp_path / "model.json"
    path.write_text("[1, 2, 3]")
    with pytest.raises(ModelFileError):
        load_model(path)
