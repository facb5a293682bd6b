"""Joint minibatch training of composite models with L1/L2 regularization.

The optimizer is Adam (adaptive per-parameter first-order updates). The L1
penalty applies only to the main network's weight matrices (never biases and
never the side networks); L2 applies to every weight matrix. Early stopping
keeps the parameters with the best validation loss.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DataError, TrainingDivergedError
from .network import CompositeModel, Scaler, sigmoid


@dataclass
class TrainingConfig:
    l1_strength: float = 5e-5
    l2_strength: float = 0.0
    learning_rate: float = 5e-3
    batch_size: int = 100
    max_epochs: int = 500
    patience: int = 20
    seed: int = 0

    def validate(self):
        if self.l1_strength < 0 or self.l2_strength < 0:
            raise ConfigError("regularization strengths must be nonnegative")
        if self.learning_rate <= 0:
            raise ConfigError("learning rate must be positive")
        if self.batch_size <= 0 or self.max_epochs <= 0:
            raise ConfigError("batch size and max epochs must be positive")
        if self.patience < 1:
            raise ConfigError("patience must be at least 1")


@dataclass
class TrainedModel:
    model: CompositeModel
    train_curve: list
    valid_curve: list
    best_valid_loss: float
    best_epoch: int

    @property
    def best_valid_rmse(self):
        # Regression losses are MSE on standard-scaled targets.
        return float(np.sqrt(self.best_valid_loss))


class Adam:
    def __init__(self, params, lr, beta1=0.9, beta2=0.999, eps=1e-8):
        self.params = params
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]
        self.t = 0

    def step(self, grads):
        self.t += 1
        b1, b2 = self.beta1, self.beta2
        corr1 = 1.0 - b1 ** self.t
        corr2 = 1.0 - b2 ** self.t
        for p, g, m, v in zip(self.params, grads, self.m, self.v):
            m *= b1
            m += (1 - b1) * g
            v *= b2
            v += (1 - b2) * g * g
            p -= self.lr * (m / corr1) / (np.sqrt(v / corr2) + self.eps)


def _flatten_grads(model, grad_dicts):
    """Order gradient arrays to match _flatten_params / Adam slots."""
    flat = []
    for gd in grad_dicts:
        flat.extend(gd["weights"])
        flat.extend(gd["biases"])
        flat.append(gd["output_weights"])
        flat.append(np.array(gd["output_bias"]))
    return flat


def _collect(model):
    """Parameter arrays for every subnetwork, plus bookkeeping for penalties.

    Returns (params, weight_mask, l1_mask) where the masks flag weight
    matrices eligible for L2 and for L1 respectively. Output biases are
    represented as 0-d arrays so Adam can update them in place.
    """
    params, weight_mask, l1_mask = [], [], []
    nets = []
    if model.main is not None:
        nets.append((model.main, True))
    if model.univariate is not None:
        nets.extend((n, False) for n in model.univariate)
    if model.interactions is not None:
        nets.extend((n, False) for _, n in model.interactions)
    bias_boxes = []
    for net, is_main in nets:
        for w in net.weights:
            params.append(w)
            weight_mask.append(True)
            l1_mask.append(is_main)
        for b in net.biases:
            params.append(b)
            weight_mask.append(False)
            l1_mask.append(False)
        params.append(net.output_weights)
        weight_mask.append(True)
        l1_mask.append(is_main)
        box = np.array(net.output_bias, dtype=float)
        params.append(box)
        weight_mask.append(False)
        l1_mask.append(False)
        bias_boxes.append((net, box))
    return params, weight_mask, l1_mask, [n for n, _ in nets], bias_boxes


def _batch_loss_and_grads(model, nets, X, y, task):
    caches = []
    out = np.zeros(X.shape[0])
    if model.main is not None:
        o, acts = model.main.forward(X)
        caches.append((model.main, X, acts))
        out += o
    if model.univariate is not None:
        for i, net in enumerate(model.univariate):
            Xi = X[:, i:i + 1]
            o, acts = net.forward(Xi)
            caches.append((net, Xi, acts))
            out += o
    if model.interactions is not None:
        for indices, net in model.interactions:
            Xi = X[:, [i - 1 for i in indices]]
            o, acts = net.forward(Xi)
            caches.append((net, Xi, acts))
            out += o
    n = X.shape[0]
    if task == "classification":
        # logistic loss on a single logit; stable formulation
        z = out
        loss = float(np.mean(np.maximum(z, 0) - z * y + np.log1p(np.exp(-np.abs(z)))))
        g = (sigmoid(z) - y) / n
    else:
        resid = out - y
        loss = float(np.mean(resid ** 2))
        g = 2.0 * resid / n
    grad_dicts = [net.backward(Xc, acts, g) for net, Xc, acts in caches]
    return loss, grad_dicts


def task_loss(model, X, y):
    """Unregularized loss of a composite model on scaled data."""
    out = model.raw_output(X)
    if model.task == "classification":
        z = out
        return float(np.mean(np.maximum(z, 0) - z * y + np.log1p(np.exp(-np.abs(z)))))
    return float(np.mean((out - y) ** 2))


def train(model, data, cfg):
    """Train a composite model in place; returns a TrainedModel.

    Features (and regression targets) are standard-scaled with statistics
    from the training split; the fitted scaler is stored on the model.
    """
    cfg.validate()
    train_idx = data.splits.get("train")
    valid_idx = data.splits.get("valid")
    if train_idx is None or len(train_idx) == 0:
        raise DataError("empty training split")
    if valid_idx is None or len(valid_idx) == 0:
        raise DataError("empty validation split")
    if model.task != data.task:
        raise DataError(f"model task {model.task!r} != dataset task {data.task!r}")

    Xtr_raw = data.features[train_idx]
    ytr_raw = data.target[train_idx]
    scaler = Scaler.fit(Xtr_raw, ytr_raw, scale_target=(model.task == "regression"))
    model.scaler = scaler
    Xtr = scaler.transform_x(Xtr_raw)
    Xva = scaler.transform_x(data.features[valid_idx])
    if model.task == "regression":
        ytr = scaler.transform_y(ytr_raw)
        yva = scaler.transform_y(data.target[valid_idx])
    else:
        ytr = ytr_raw.astype(float)
        yva = data.target[valid_idx].astype(float)

    params, weight_mask, l1_mask, nets, bias_boxes = _collect(model)
    opt = Adam(params, cfg.learning_rate)
    rng = np.random.default_rng(cfg.seed)
    n = len(train_idx)

    best_loss = np.inf
    best_params = None
    best_epoch = -1
    stale = 0
    train_curve, valid_curve = [], []

    for epoch in range(cfg.max_epochs):
        order = rng.permutation(n)
        epoch_loss = 0.0
        n_batches = 0
        for start in range(0, n, cfg.batch_size):
            sel = order[start:start + cfg.batch_size]
            loss, grad_dicts = _batch_loss_and_grads(model, nets, Xtr[sel], ytr[sel], model.task)
            grads = _flatten_grads(model, grad_dicts)
            for g, p, is_w, is_l1 in zip(grads, params, weight_mask, l1_mask):
                if is_w and cfg.l2_strength > 0:
                    g += 2.0 * cfg.l2_strength * p
                if is_l1 and cfg.l1_strength > 0:
                    g += cfg.l1_strength * np.sign(p)
            opt.step(grads)
            for net, box in bias_boxes:
                net.output_bias = float(box)
            epoch_loss += loss
            n_batches += 1
        epoch_loss /= n_batches
        if not np.isfinite(epoch_loss):
            raise TrainingDivergedError(epoch)
        valid_loss = task_loss(model, Xva, yva)
        if not np.isfinite(valid_loss):
            raise TrainingDivergedError(epoch)
        train_curve.append(epoch_loss)
        valid_curve.append(valid_loss)
        if valid_loss < best_loss - 1e-12:
            best_loss = valid_loss
            best_epoch = epoch
            best_params = [p.copy() for p in params]
            stale = 0
        else:
            stale += 1
            if stale >= cfg.patience:
                break

    if best_params is not None:
        for p, bp in zip(params, best_params):
            p[...] = bp
        for net, box in bias_boxes:
            net.output_bias = float(box)
    return TrainedModel(model=model, train_curve=train_curve, valid_curve=valid_curve,
                        best_valid_loss=best_loss, best_epoch=best_epoch)
