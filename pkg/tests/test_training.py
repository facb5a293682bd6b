import numpy as np
import pytest

from nninteract import Dataset, TrainingConfig, split, train
from nninteract.errors import ConfigError, DataError, TrainingDivergedError
from nninteract.experiments import build_detector
from nninteract.network import CompositeModel, init_network
from nninteract.training import _batch_loss_and_grads, _collect, _flatten_grads, task_loss


def _make_data(n, fn, seed=0, p=2):
    rng = np.random.default_rng(seed)
    X = rng.uniform(-1, 1, (n, p))
    return split(Dataset(features=X, target=fn(X)), (0.7, 0.15, 0.15), seed)


def test_constant_target_fit():
    data = _make_data(400, lambda X: np.full(X.shape[0], 3.7))
    model = CompositeModel(n_features=2, main=init_network([2, 8], seed=0))
    cfg = TrainingConfig(l1_strength=0, max_epochs=60, patience=60, seed=0)
    trained = train(model, data, cfg)
    # scaled MSE against a constant target collapses to ~0
    Xtr, ytr = data.subset("train")
    pred = model.predict(Xtr)
    assert np.mean((pred - ytr) ** 2) < 1e-2


def test_linear_target_fit():
    data = _make_data(1000, lambda X: 3.0 * X[:, 0])
    model = build_detector(2, kind="mlp-m", seed=0,
                           main_hidden=(16, 8))
    cfg = TrainingConfig(l1_strength=0, max_epochs=150, patience=30, seed=0)
    trained = train(model, data, cfg)
    Xva, yva = data.subset("valid")
    rmse = np.sqrt(np.mean((model.predict(Xva) - yva) ** 2))
    assert rmse < 0.05


def test_descent_property_single_step():
    data = _make_data(100, lambda X: np.sin(3 * X[:, 0]) + X[:, 1])
    model = CompositeModel(n_features=2, main=init_network([2, 10, 6], seed=1))
    Xtr, ytr = data.subset("train")
    params, wmask, l1mask, nets, boxes = _collect(model)
    loss0, grad_dicts = _batch_loss_and_grads(model, nets, Xtr, ytr, "regression")
    grads = _flatten_grads(model, grad_dicts)
    lr = 1e-5
    for p, g in zip(params, grads):
        p -= lr * g
    loss1, _ = _batch_loss_and_grads(model, nets, Xtr, ytr, "regression")
    assert loss1 < loss0


def test_l1_sparsification_monotone():
    data = _make_data(1200, lambda X: X[:, 0] * X[:, 1], p=4)
    def count_small(l1):
        model = CompositeModel(n_features=4, main=init_network([4, 20, 10], seed=5))
        cfg = TrainingConfig(l1_strength=l1, max_epochs=80, patience=80, seed=5)
        train(model, data, cfg)
        return sum(int(np.sum(np.abs(w) < 1e-3)) for w in model.main.weights)
    weak = count_small(1e-5)
    strong = count_small(1e-3)
    assert strong > weak


def test_early_stopping_restores_best():
    data = _make_data(300, lambda X: X[:, 0] ** 2)
    model = CompositeModel(n_features=2, main=init_network([2, 8], seed=2))
    cfg = TrainingConfig(l1_strength=0, max_epochs=40, patience=5, seed=2)
    trained = train(model, data, cfg)
    Xva, yva = data.subset("valid")
    scaler = model.scaler
    loss = task_loss(model, scaler.transform_x(Xva), scaler.transform_y(yva))
    assert loss == pytest.approx(trained.best_valid_loss, rel=1e-9)
    assert trained.best_valid_loss <= min(trained.valid_curve) + 1e-12


def test_divergence_reports_epoch():
    data = _make_data(200, lambda X: X[:, 0])
    model = CompositeModel(n_features=2, main=init_network([2, 8], seed=0))
    model.main.weights[0][:] = 1e160   # squared residuals overflow in the first epoch
    cfg = TrainingConfig(l1_strength=0, max_epochs=10, patience=5, seed=0)
    with pytest.raises(TrainingDivergedError) as err:
        train(model, data, cfg)
    assert err.value.epoch == 0


def test_empty_split_rejected():
    data = _make_data(50, lambda X: X[:, 0])
    data.splits["train"] = np.array([], dtype=int)
    model = CompositeModel(n_features=2, main=init_network([2, 4], seed=0))
    with pytest.raises(DataError):
        train(model, data, TrainingConfig())


def test_config_validation():
    with pytest.raises(ConfigError):
        TrainingConfig(l1_strength=-1).validate()
    with pytest.raises(ConfigError):
        TrainingConfig(patience=0).validate()
    with pytest.raises(ConfigError):
        TrainingConfig(learning_rate=0).validate()


def test_training_deterministic_given_seed():
    data = _make_data(400, lambda X: X[:, 0] * X[:, 1])
    out = []
    for _ in range(2):
        model = CompositeModel(n_features=2, main=init_network([2, 10], seed=3))
        cfg = TrainingConfig(l1_strength=1e-5, max_epochs=15, patience=15, seed=3)
        train(model, data, cfg)
        out.append(model.main.weights[0].copy())
    assert np.array_equal(out[0], out[1])


def test_classification_training():
    rng = np.random.default_rng(0)
    X = rng.uniform(-1, 1, (800, 2))
    y = (X[:, 0] + X[:, 1] > 0).astype(float)
    data = split(Dataset(features=X, target=y, task="classification"), (0.7, 0.15, 0.15), 0)
    model = CompositeModel(n_features=2, task="classification",
                           main=init_network([2, 12, 6], seed=0))
    cfg = TrainingConfig(l1_strength=0, max_epochs=80, patience=20, seed=0)
    train(model, data, cfg)
    Xva, yva = data.subset("valid")
    acc = np.mean((model.predict(Xva) > 0.5) == (yva > 0.5))
    assert acc > 0.9
