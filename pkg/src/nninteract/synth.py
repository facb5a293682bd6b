"""Synthetic regression benchmarks with known interaction structure.

Ten 10-feature generating functions (F1..F10) with hand-derived registries of
their maximal non-additive interactions, plus a sparse-quadratic generator for
the many-feature setting.
"""

import numpy as np

from .data import Dataset, split
from .errors import ConfigError, DataError


def _f1(x):
    x1, x2, x3, x4, x5, x6, x7, x8, x9, x10 = x.T
    return (np.pi ** (x1 * x2) * np.sqrt(2 * x3) - np.arcsin(x4)
            + np.log(x3 + x5) - (x9 / x10) * np.sqrt(x7 / x8) - x2 * x7)


def _f2(x):
    x1, x2, x3, x4, x5, x6, x7, x8, x9, x10 = x.T
    return (np.pi ** (x1 * x2) * np.sqrt(2 * np.abs(x3)) - np.arcsin(0.5 * x4)
            + np.log(np.abs(x3 + x5) + 1)
            + (x9 / (1 + np.abs(x10))) * np.sqrt(np.abs(x7) / (1 + np.abs(x8)))
            - x2 * x7)


def _f3(x):
    x1, x2, x3, x4, x5, x6, x7, x8, x9, x10 = x.T
    return (np.exp(np.abs(x1 - x2)) + np.abs(x2 * x3) - (x3 ** 2) ** np.abs(x4)
            + np.log(x4 ** 2 + x5 ** 2 + x7 ** 2 + x8 ** 2) + x9
            + 1.0 / (1 + x10 ** 2))


def _f4(x):
    x1, x2, x3, x4, x5, x6, x7, x8, x9, x10 = x.T
    return (np.exp(np.abs(x1 - x2)) + np.abs(x2 * x3) - (x3 ** 2) ** np.abs(x4)
            + (x1 * x4) ** 2
            + np.log(x4 ** 2 + x5 ** 2 + x7 ** 2 + x8 ** 2) + x9
            + 1.0 / (1 + x10 ** 2))


def _f5(x):
    x1, x2, x3, x4, x5, x6, x7, x8, x9, x10 = x.T
    return (1.0 / (1 + x1 ** 2 + x2 ** 2 + x3 ** 2) + np.sqrt(np.exp(x4 + x5))
            + np.abs(x6 + x7) + x8 * x9 * x10)


def _f6(x):
    x1, x2, x3, x4, x5, x6, x7, x8, x9, x10 = x.T
    return (np.exp(np.abs(x1 * x2) + 1) - np.exp(np.abs(x3 + x4) + 1)
            + np.cos(x5 + x6 - x8) + np.sqrt(x8 ** 2 + x9 ** 2 + x10 ** 2))


def _f7(x):
    x1, x2, x3, x4, x5, x6, x7, x8, x9, x10 = x.T
    return ((np.arctan(x1) + np.arctan(x2)) ** 2
            + np.maximum(x3 * x4 + x6, 0)
            - 1.0 / (1 + (x4 * x5 * x6 * x7 * x8) ** 2)
            + (np.abs(x7) / (1 + np.abs(x9))) ** 5
            + x.sum(axis=1))


def _f8(x):
    x1, x2, x3, x4, x5, x6, x7, x8, x9, x10 = x.T
    return (x1 * x2 + 2.0 ** (x3 + x5 + x6) + 2.0 ** (x3 + x4 + x5 + x7)
            + np.sin(x7 * np.sin(x8 + x9)) + np.arccos(0.9 * x10))


def _f9(x):
    x1, x2, x3, x4, x5, x6, x7, x8, x9, x10 = x.T
    return (np.tanh(x1 * x2 + x3 * x4) * np.sqrt(np.abs(x5)) + np.exp(x5 + x6)
            + np.log((x6 * x7 * x8) ** 2 + 1) + x9 * x10
            + 1.0 / (1 + np.abs(x10)))


def _f10(x):
    x1, x2, x3, x4, x5, x6, x7, x8, x9, x10 = x.T
    return (np.sinh(x1 + x2) + np.arccos(np.tanh(x3 + x5 + x7))
            + np.cos(x4 + x5) + 1.0 / np.cos(x7 * x9))


_FUNCTIONS = {
    "F1": _f1, "F2": _f2, "F3": _f3, "F4": _f4, "F5": _f5,
    "F6": _f6, "F7": _f7, "F8": _f8, "F9": _f9, "F10": _f10,
}

# Maximal non-additive interactions of each generating function (1-based
# feature indices), derived term by term. Registry entries are mutually
# non-redundant: no entry is a subset of another.
GROUND_TRUTH = {
    "F1": [(1, 2, 3), (2, 7), (3, 5), (7, 8, 9, 10)],
    "F2": [(1, 2, 3), (2, 7), (3, 5), (7, 8, 9, 10)],
    "F3": [(1, 2), (2, 3), (3, 4), (4, 5, 7, 8)],
    "F4": [(1, 2), (1, 4), (2, 3), (3, 4), (4, 5, 7, 8)],
    "F5": [(1, 2, 3), (4, 5), (6, 7), (8, 9, 10)],
    "F6": [(1, 2), (3, 4), (5, 6, 8), (8, 9, 10)],
    "F7": [(1, 2), (3, 4, 6), (4, 5, 6, 7, 8), (7, 9)],
    "F8": [(1, 2), (3, 4, 5, 7), (3, 5, 6), (7, 8, 9)],
    "F9": [(1, 2, 3, 4, 5), (5, 6), (6, 7, 8), (9, 10)],
    "F10": [(1, 2), (3, 5, 7), (4, 5), (7, 9)],
}

FUNCTION_IDS = tuple(_FUNCTIONS)
N_FEATURES = 10

# F1 keeps every term in-domain: positive log argument (x3 + x5), arcsin
# domain for x4, and positive denominators x8, x10.
_F1_UNIT_RANGE = (1, 2, 3, 6, 7, 9)      # U(0, 1)
_F1_SHIFTED_RANGE = (4, 5, 8, 10)        # U(0.6, 1)


def evaluate_function(function_id, X):
    """Apply a test-suite function to an (n, 10) feature matrix."""
    if function_id not in _FUNCTIONS:
        raise ConfigError(f"unknown function id {function_id!r}")
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != N_FEATURES:
        raise ConfigError(f"{function_id} expects {N_FEATURES} features")
    y = _FUNCTIONS[function_id](X)
    if not np.all(np.isfinite(y)):
        raise DataError(f"{function_id} produced non-finite values")
    return y


def generate(function_id, n, seed):
    """Sample a dataset from a test-suite function, with 1/3-1/3-1/3 splits."""
    if function_id not in _FUNCTIONS:
        raise ConfigError(f"unknown function id {function_id!r}")
    if n < 1:
        raise ConfigError("n must be positive")
    rng = np.random.default_rng(seed)
    if function_id == "F1":
        X = np.empty((n, N_FEATURES))
        for j in _F1_UNIT_RANGE:
            X[:, j - 1] = rng.uniform(0.0, 1.0, size=n)
        for j in _F1_SHIFTED_RANGE:
            X[:, j - 1] = rng.uniform(0.6, 1.0, size=n)
    else:
        X = rng.uniform(-1.0, 1.0, size=(n, N_FEATURES))
    y = evaluate_function(function_id, X)
    data = Dataset(features=X, target=y, task="regression")
    split_seed = int(rng.integers(0, 2 ** 31 - 1))
    return split(data, (1 / 3, 1 / 3, 1 / 3), split_seed)


def ground_truth(function_id):
    """Maximal true interactions of a test-suite function (1-based indices)."""
    if function_id not in GROUND_TRUTH:
        raise ConfigError(f"unknown function id {function_id!r}")
    return [tuple(t) for t in GROUND_TRUTH[function_id]]


def generate_large_p(p, n, K, density, noise_var, seed):
    """Sparse quadratic generator: y = beta.x + x'Wx + eps, W a sum of K
    sparse rank-one matrices.

    Returns ``(dataset, true_pairs)`` where ``true_pairs`` lists every
    unordered pair {i, j}, i != j, with a nonzero off-diagonal entry in W.
    """
    if p < 1 or n < 1 or K < 1:
        raise ConfigError("p, n, K must be positive")
    if not (0 < density <= 1):
        raise ConfigError("density must be in (0, 1]")
    rng = np.random.default_rng(seed)
    X = rng.normal(0.0, 1.0, size=(n, p))
    beta = rng.normal(0.0, 1.0, size=p) * (rng.random(p) < density)
    W = np.zeros((p, p))
    for _ in range(K):
        a = rng.normal(0.0, 1.0, size=p) * (rng.random(p) < density)
        W += np.outer(a, a)
    eps = rng.normal(0.0, np.sqrt(noise_var), size=n) if noise_var > 0 else 0.0
    y = X @ beta + np.einsum("ni,ij,nj->n", X, W, X) + eps
    pairs = sorted(
        (i + 1, j + 1)
        for i in range(p) for j in range(i + 1, p)
        if W[i, j] != 0.0
    )
    data = Dataset(features=X, target=y, task="regression")
    split_seed = int(rng.integers(0, 2 ** 31 - 1))
    return split(data, (1 / 3, 1 / 3, 1 / 3), split_seed), pairs


def save_ground_truth(interactions, path):
    """One interaction per line, comma-separated ascending indices."""
    with open(path, "w") as f:
        for cand in interactions:
            f.write(",".join(str(i) for i in sorted(cand)) + "\n")


def load_ground_truth(path):
    out = []
    with open(path) as f:
        for line in f:
            line = line.strip()
            if line:
                out.append(tuple(int(tok) for tok in line.split(",")))
    return out
