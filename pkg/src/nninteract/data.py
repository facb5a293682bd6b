"""Dataset container, split management, CSV import/export, noise injection."""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DataError


@dataclass
class Dataset:
    features: np.ndarray        # (n, p)
    target: np.ndarray          # (n,)
    task: str = "regression"    # "regression" | "classification"
    splits: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.features.shape[0]

    @property
    def p(self):
        return self.features.shape[1]

    def validate(self):
        if self.features.ndim != 2 or self.target.shape != (self.n,):
            raise DataError("features must be (n, p) and target (n,)")
        if not np.all(np.isfinite(self.features)) or not np.all(np.isfinite(self.target)):
            raise DataError("dataset contains non-finite values")
        seen = np.zeros(self.n, dtype=bool)
        for name, idx in self.splits.items():
            idx = np.asarray(idx)
            if idx.size and (idx.min() < 0 or idx.max() >= self.n):
                raise DataError(f"split {name!r} has out-of-range indices")
            if np.any(seen[idx]):
                raise DataError(f"split {name!r} overlaps another split")
            seen[idx] = True

    def subset(self, name):
        idx = self.splits[name]
        return self.features[idx], self.target[idx]


def split(data, fractions, seed):
    """Return a copy of ``data`` with fresh random train/valid/test splits."""
    fractions = tuple(float(f) for f in fractions)
    if len(fractions) != 3 or any(f < 0 for f in fractions):
        raise ConfigError("fractions must be three nonnegative reals")
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise ConfigError(f"fractions must sum to 1, got {sum(fractions)}")
    n = data.n
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    n_train = int(round(fractions[0] * n))
    n_valid = int(round(fractions[1] * n))
    n_train = min(n_train, n)
    n_valid = min(n_valid, n - n_train)
    splits = {
        "train": np.sort(perm[:n_train]),
        "valid": np.sort(perm[n_train:n_train + n_valid]),
        "test": np.sort(perm[n_train + n_valid:]),
    }
    return Dataset(features=data.features, target=data.target, task=data.task,
                   splits=splits)


def add_noise(data, sigma, seed):
    """Standard-scale every column (train-split statistics), then add N(0, sigma^2).

    Noise goes on all features and the target. With ``sigma=0`` this is pure
    standard scaling, which is idempotent after the first application.
    """
    if sigma < 0:
        raise ConfigError("sigma must be nonnegative")
    train_idx = data.splits.get("train")
    if train_idx is None or len(train_idx) == 0:
        raise DataError("add_noise requires a nonempty training split")
    X = data.features.astype(float).copy()
    y = data.target.astype(float).copy()
    mu = X[train_idx].mean(axis=0)
    sd = X[train_idx].std(axis=0)
    sd = np.where(sd < 1e-12, 1.0, sd)
    X = (X - mu) / sd
    ymu = y[train_idx].mean()
    ysd = y[train_idx].std()
    y = (y - ymu) / (ysd if ysd > 1e-12 else 1.0)
    rng = np.random.default_rng(seed)
    if sigma > 0:
        X += rng.normal(0.0, sigma, size=X.shape)
        y += rng.normal(0.0, sigma, size=y.shape)
    return Dataset(features=X, target=y, task=data.task,
                   splits={k: np.array(v) for k, v in data.splits.items()})


def save_csv(data, path):
    """Write features plus target as CSV (header row; last column is the target)."""
    p = data.p
    header = ",".join([f"x{i}" for i in range(1, p + 1)] + ["y"])
    mat = np.column_stack([data.features, data.target])
    with open(path, "w") as f:
        f.write(header + "\n")
        for row in mat:
            f.write(",".join(repr(float(v)) for v in row) + "\n")


def load_csv(path, task="regression"):
    """Read a dataset CSV (header; last column target). No splits are assigned."""
    try:
        mat = np.genfromtxt(path, delimiter=",", skip_header=1)
    except (OSError, ValueError) as exc:
        raise DataError(f"cannot read dataset CSV {path}: {exc}") from exc
    if mat.ndim == 1:
        mat = mat[None, :]
    if mat.size == 0 or mat.shape[1] < 2:
        raise DataError(f"dataset CSV {path} needs at least one feature and a target")
    if not np.all(np.isfinite(mat)):
        raise DataError(f"dataset CSV {path} contains non-numeric or missing values")
    return Dataset(features=mat[:, :-1], target=mat[:, -1], task=task)
