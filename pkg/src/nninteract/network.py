"""Dense feedforward networks with ReLU, and composite (summed) models.

All heavy math is batched numpy. A ``DenseNetwork`` with ``L`` hidden layers
stores weight matrices of shape ``(p_l, p_{l-1})``, matching the convention
that row ``i`` of the first matrix holds the input weights of hidden unit
``i``. A network may have zero hidden layers, in which case it reduces to a
linear model ``w . x + b``.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ConfigError, NetworkShapeError


def relu(x):
    return np.maximum(x, 0.0)


@dataclass
class DenseNetwork:
    weights: list        # L arrays, weights[l] has shape (p_{l+1}, p_l)
    biases: list         # L arrays, biases[l] has shape (p_{l+1},)
    output_weights: np.ndarray   # shape (p_L,)
    output_bias: float

    @property
    def n_inputs(self):
        if self.weights:
            return self.weights[0].shape[1]
        return self.output_weights.shape[0]

    @property
    def layer_sizes(self):
        sizes = [self.n_inputs]
        sizes.extend(w.shape[0] for w in self.weights)
        return sizes

    @property
    def depth(self):
        return len(self.weights)

    def check_shapes(self):
        sizes = self.layer_sizes
        for l, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.shape != (sizes[l + 1], sizes[l]):
                raise NetworkShapeError(
                    f"layer {l + 1}: weight shape {w.shape} does not match "
                    f"layer sizes {sizes[l + 1]}x{sizes[l]}")
            if b.shape != (sizes[l + 1],):
                raise NetworkShapeError(
                    f"layer {l + 1}: bias shape {b.shape} != ({sizes[l + 1]},)")
        if self.output_weights.shape != (sizes[-1],):
            raise NetworkShapeError(
                f"output weights shape {self.output_weights.shape} != ({sizes[-1]},)")

    def forward(self, X):
        """Batched forward pass.

        Returns ``(out, activations)`` where ``out`` has shape ``(n,)`` and
        ``activations[l]`` is the ReLU output of hidden layer ``l+1``.
        """
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.n_inputs:
            raise NetworkShapeError(
                f"input shape {X.shape} incompatible with {self.n_inputs} features")
        acts = []
        h = X
        for w, b in zip(self.weights, self.biases):
            h = relu(h @ w.T + b)
            acts.append(h)
        out = h @ self.output_weights + self.output_bias
        return out, acts

    def backward(self, X, acts, grad_out):
        """Backpropagate ``grad_out`` (dLoss/dOut, shape (n,)) to all parameters.

        Returns a dict with keys ``weights``, ``biases`` (lists of gradient
        arrays) and ``output_weights``, ``output_bias``.
        """
        h_last = acts[-1] if acts else X
        d_wy = h_last.T @ grad_out
        d_by = float(grad_out.sum())
        grads_w = [None] * len(self.weights)
        grads_b = [None] * len(self.weights)
        dh = np.outer(grad_out, self.output_weights)
        for l in range(len(self.weights) - 1, -1, -1):
            dz = dh * (acts[l] > 0)
            prev = acts[l - 1] if l > 0 else X
            grads_w[l] = dz.T @ prev
            grads_b[l] = dz.sum(axis=0)
            dh = dz @ self.weights[l]
        return {"weights": grads_w, "biases": grads_b,
                "output_weights": d_wy, "output_bias": d_by}

    def hidden_gradients(self, x):
        """d(out)/d(h^(l)) for every hidden layer, for a single input ``x``.

        Returns a list of length L where entry ``l-1`` is the gradient of the
        scalar output with respect to the activations of hidden layer ``l``.
        """
        _, acts = self.forward(np.asarray(x, dtype=float)[None, :])
        grads = [None] * len(self.weights)
        dh = self.output_weights.copy()
        for l in range(len(self.weights) - 1, -1, -1):
            grads[l] = dh
            dh = (dh * (acts[l][0] > 0)) @ self.weights[l]
        return grads

    def parameters(self):
        """Flat list of parameter arrays (views, mutated in place by training)."""
        return list(self.weights) + list(self.biases) + [self.output_weights]

    def copy(self):
        return DenseNetwork(
            weights=[w.copy() for w in self.weights],
            biases=[b.copy() for b in self.biases],
            output_weights=self.output_weights.copy(),
            output_bias=self.output_bias,
        )

    def assert_finite(self):
        for arr in self.parameters():
            if not np.all(np.isfinite(arr)):
                raise NetworkShapeError("network contains non-finite values")
        if not np.isfinite(self.output_bias):
            raise NetworkShapeError("network contains non-finite values")


def init_network(layer_sizes, seed):
    """Build a network with uniform(-s, s) weights, s = sqrt(6/(fan_in+fan_out)).

    ``layer_sizes`` lists the input width followed by the hidden widths; a
    single entry yields a linear (no hidden layer) network. Biases start at
    zero. Deterministic given ``seed``.
    """
    sizes = list(layer_sizes)
    if not sizes or any((not isinstance(s, (int, np.integer))) or s <= 0 for s in sizes):
        raise ConfigError(f"layer sizes must be positive integers, got {layer_sizes}")
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        s = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-s, s, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    s = np.sqrt(6.0 / (sizes[-1] + 1))
    output_weights = rng.uniform(-s, s, size=sizes[-1])
    net = DenseNetwork(weights=weights, biases=biases,
                       output_weights=output_weights, output_bias=0.0)
    net.check_shapes()
    return net


def gradient_check(network, x, epsilon=1e-5, seed=0):
    """Max relative deviation between backprop and central finite differences.

    ``x`` is resampled (uniform in [-1, 1]) whenever any ReLU preactivation is
    within ``10 * epsilon`` of zero, so the finite difference never straddles
    a kink.
    """
    if epsilon <= 0:
        raise ConfigError("epsilon must be positive")
    x = np.asarray(x, dtype=float)
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        if _min_preactivation(network, x) >= 10 * epsilon:
            break
        x = rng.uniform(-1, 1, size=network.n_inputs)
    X = x[None, :]
    out, acts = network.forward(X)
    grads = network.backward(X, acts, np.ones(1))
    analytic = grads["weights"] + grads["biases"] + [grads["output_weights"]]
    params = network.parameters()
    max_dev = 0.0
    for arr, g in zip(params, analytic):
        flat = arr.ravel()
        gflat = np.asarray(g, dtype=float).ravel()
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + epsilon
            plus = network.forward(X)[0][0]
            flat[i] = orig - epsilon
            minus = network.forward(X)[0][0]
            flat[i] = orig
            fd = (plus - minus) / (2 * epsilon)
            max_dev = max(max_dev, _rel_dev(gflat[i], fd))
    # output bias: d out / d b^y is exactly 1
    fd = 1.0
    max_dev = max(max_dev, _rel_dev(grads["output_bias"], fd))
    return max_dev


def _rel_dev(a, b):
    m = max(abs(a), abs(b))
    if m < 1e-10:
        return 0.0
    return abs(a - b) / m


def _min_preactivation(network, x):
    h = np.asarray(x, dtype=float)
    worst = np.inf
    for w, b in zip(network.weights, network.biases):
        z = w @ h + b
        worst = min(worst, float(np.min(np.abs(z))) if z.size else np.inf)
        h = relu(z)
    return worst


def sigmoid(z):
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


@dataclass
class CompositeModel:
    """Sum of an optional main network, per-feature nets, and per-interaction nets.

    Realizes the three architectures used throughout the package: a plain
    multilayer perceptron (main only), one with univariate side networks
    (main + univariate), and the additive cutoff model (univariate +
    interaction nets, no main).
    """

    n_features: int
    task: str = "regression"                     # "regression" | "classification"
    main: Optional[DenseNetwork] = None
    univariate: Optional[list] = None            # list of p DenseNetworks
    interactions: Optional[list] = None          # list of (indices tuple, DenseNetwork)
    scaler: Optional["Scaler"] = None

    def networks(self):
        nets = []
        if self.main is not None:
            nets.append(self.main)
        if self.univariate is not None:
            nets.extend(self.univariate)
        if self.interactions is not None:
            nets.extend(net for _, net in self.interactions)
        return nets

    def raw_output(self, X):
        """Summed network output on already-scaled inputs (no link, no unscaling)."""
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.n_features:
            raise NetworkShapeError(
                f"input shape {X.shape} incompatible with {self.n_features} features")
        out = np.zeros(X.shape[0])
        if self.main is not None:
            out += self.main.forward(X)[0]
        if self.univariate is not None:
            for i, net in enumerate(self.univariate):
                out += net.forward(X[:, i:i + 1])[0]
        if self.interactions is not None:
            for indices, net in self.interactions:
                cols = [i - 1 for i in indices]
                out += net.forward(X[:, cols])[0]
        return out

    def forward(self, x):
        """Single-sample prediction plus the main network's hidden activations.

        For classification the prediction is the probability of the positive
        class; for regression it is in original target units when a scaler is
        attached.
        """
        x = np.asarray(x, dtype=float)
        X = x[None, :]
        if self.scaler is not None:
            X = self.scaler.transform_x(X)
        out = self.raw_output(X)
        hidden = self.main.forward(X)[1] if self.main is not None else []
        hidden = [h[0] for h in hidden]
        if self.task == "classification":
            return float(sigmoid(out)[0]), hidden
        if self.scaler is not None:
            out = self.scaler.inverse_transform_y(out)
        return float(out[0]), hidden

    def predict(self, X):
        """Batched prediction on raw (unscaled) inputs."""
        X = np.asarray(X, dtype=float)
        if self.scaler is not None:
            X = self.scaler.transform_x(X)
        out = self.raw_output(X)
        if self.task == "classification":
            return sigmoid(out)
        if self.scaler is not None:
            out = self.scaler.inverse_transform_y(out)
        return out

    def copy(self):
        return CompositeModel(
            n_features=self.n_features,
            task=self.task,
            main=self.main.copy() if self.main is not None else None,
            univariate=[n.copy() for n in self.univariate] if self.univariate is not None else None,
            interactions=[(tuple(idx), n.copy()) for idx, n in self.interactions]
            if self.interactions is not None else None,
            scaler=self.scaler,
        )


@dataclass
class Scaler:
    """Standard scaling statistics, always fit on the training split only."""

    x_mean: np.ndarray
    x_std: np.ndarray
    y_mean: float = 0.0
    y_std: float = 1.0

    @classmethod
    def fit(cls, X, y, scale_target):
        x_mean = X.mean(axis=0)
        x_std = X.std(axis=0)
        x_std = np.where(x_std < 1e-12, 1.0, x_std)
        if scale_target:
            y_std = float(y.std())
            return cls(x_mean, x_std, float(y.mean()), y_std if y_std > 1e-12 else 1.0)
        return cls(x_mean, x_std)

    def transform_x(self, X):
        return (X - self.x_mean) / self.x_std

    def transform_y(self, y):
        return (y - self.y_mean) / self.y_std

    def inverse_transform_y(self, y):
        return y * self.y_std + self.y_mean
