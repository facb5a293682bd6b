"""Versioned JSON persistence for composite models.

JSON float serialization uses repr, which round-trips IEEE doubles exactly,
so save -> load is bit-exact on all weights.
"""

import json

import numpy as np

from .errors import ModelFileError
from .network import CompositeModel, DenseNetwork, Scaler

FORMAT_VERSION = 1


def _net_to_dict(net):
    return {
        "layer_sizes": [int(s) for s in net.layer_sizes],
        "weights": [w.tolist() for w in net.weights],
        "biases": [b.tolist() for b in net.biases],
        "output_weights": net.output_weights.tolist(),
        "output_bias": float(net.output_bias),
    }


def _net_from_dict(d, label):
    try:
        sizes = [int(s) for s in d["layer_sizes"]]
        weights = [np.array(w, dtype=float) for w in d["weights"]]
        biases = [np.array(b, dtype=float) for b in d["biases"]]
        net = DenseNetwork(weights=weights, biases=biases,
                           output_weights=np.array(d["output_weights"], dtype=float),
                           output_bias=float(d["output_bias"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFileError(f"malformed network entry for {label}: {exc}") from exc
    if len(weights) != len(sizes) - 1 or len(biases) != len(weights):
        raise ModelFileError(
            f"{label}: {len(weights)} weight matrices inconsistent with "
            f"layer_sizes {sizes}")
    for l, w in enumerate(weights, start=1):
        expected = (sizes[l], sizes[l - 1])
        if w.ndim != 2 or w.shape != expected:
            raise ModelFileError(
                f"{label}: layer {l} weight shape {w.shape} contradicts "
                f"layer_sizes (expected {expected})")
    for l, b in enumerate(biases, start=1):
        if b.shape != (sizes[l],):
            raise ModelFileError(
                f"{label}: layer {l} bias shape {b.shape} contradicts layer_sizes")
    if net.output_weights.shape != (sizes[-1],):
        raise ModelFileError(
            f"{label}: output weight length {net.output_weights.shape[0]} "
            f"contradicts last layer size {sizes[-1]}")
    return net


def save_model(model, path):
    doc = {
        "format_version": FORMAT_VERSION,
        "task": model.task,
        "n_features": int(model.n_features),
        "scaler": None,
        "main": None,
        "univariate": None,
        "interactions": None,
    }
    if model.scaler is not None:
        doc["scaler"] = {
            "x_mean": model.scaler.x_mean.tolist(),
            "x_std": model.scaler.x_std.tolist(),
            "y_mean": float(model.scaler.y_mean),
            "y_std": float(model.scaler.y_std),
        }
    if model.main is not None:
        doc["main"] = _net_to_dict(model.main)
    if model.univariate is not None:
        doc["univariate"] = [_net_to_dict(n) for n in model.univariate]
    if model.interactions is not None:
        doc["interactions"] = [
            {"indices": [int(i) for i in idx], "net": _net_to_dict(n)}
            for idx, n in model.interactions
        ]
    with open(path, "w") as f:
        json.dump(doc, f)


def load_model(path):
    try:
        with open(path) as f:
            doc = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelFileError(f"cannot parse model file {path}: {exc}") from exc
    if not isinstance(doc, dict) or "format_version" not in doc:
        raise ModelFileError(f"{path} is not a model file")
    if doc["format_version"] != FORMAT_VERSION:
        raise ModelFileError(
            f"unsupported format_version {doc['format_version']} "
            f"(expected {FORMAT_VERSION})")
    try:
        task = doc["task"]
        n_features = int(doc["n_features"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFileError(f"malformed model file {path}: {exc}") from exc
    scaler = None
    if doc.get("scaler") is not None:
        s = doc["scaler"]
        try:
            scaler = Scaler(x_mean=np.array(s["x_mean"], dtype=float),
                            x_std=np.array(s["x_std"], dtype=float),
                            y_mean=float(s["y_mean"]), y_std=float(s["y_std"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelFileError(f"malformed scaler in {path}: {exc}") from exc
    main = _net_from_dict(doc["main"], "main network") if doc.get("main") else None
    univariate = None
    if doc.get("univariate") is not None:
        univariate = [_net_from_dict(d, f"univariate network {i + 1}")
                      for i, d in enumerate(doc["univariate"])]
    interactions = None
    if doc.get("interactions") is not None:
        interactions = []
        for k, entry in enumerate(doc["interactions"]):
            try:
                idx = tuple(int(i) for i in entry["indices"])
                net_doc = entry["net"]
            except (KeyError, TypeError, ValueError) as exc:
                raise ModelFileError(
                    f"malformed interaction entry {k} in {path}: {exc}") from exc
            interactions.append((idx, _net_from_dict(net_doc, f"interaction network {idx}")))
    return CompositeModel(n_features=n_features, task=task, main=main,
                          univariate=univariate, interactions=interactions,
                          scaler=scaler)
