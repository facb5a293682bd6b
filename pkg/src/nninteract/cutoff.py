"""Additive models over top-ranked interactions, and the ranking cutoff.

The cutoff model is a GAM: one small network per feature plus one small
network per selected interaction, summed at the output, with no main
multivariate network. The cutoff scans K = 0..K_max, training a fresh model
on the top-K ranked candidates each time, and stops where the validation
metric reaches the reference model's.
"""

from dataclasses import dataclass

import numpy as np

from .detection import prune_subsets
from .errors import ConfigError, TrainingDivergedError
from .metrics import auc
from .network import CompositeModel, init_network
from .training import TrainingConfig, train

UNIVARIATE_HIDDEN = (10, 10, 10)
INTERACTION_HIDDEN = (10, 10, 10)


@dataclass
class CutoffResult:
    selected: list          # pruned top-K_stop candidates
    curve: list             # validation metric at K = 0..K_max
    reference_metric: float
    K_stop: int


def build_cutoff_model(p, interactions, task="regression", seed=0,
                       univariate_hidden=UNIVARIATE_HIDDEN):
    """GAM of p univariate networks plus one network per interaction."""
    interactions = [tuple(sorted(c)) for c in interactions]
    for cand in interactions:
        if len(cand) < 2 or cand[0] < 1 or cand[-1] > p:
            raise ConfigError(f"invalid interaction candidate {cand} for p={p}")
    univariate = [init_network([1, *univariate_hidden], seed=seed * 100003 + i)
                  for i in range(p)]
    nets = [(cand, init_network([len(cand), *INTERACTION_HIDDEN],
                                seed=seed * 100003 + p + k))
            for k, cand in enumerate(interactions)]
    return CompositeModel(n_features=p, task=task, univariate=univariate,
                          interactions=nets or None)


def validation_metric(trained, data):
    """Scaled RMSE for regression, validation AUC for classification."""
    model = trained.model
    if model.task == "regression":
        return trained.best_valid_rmse
    Xva, yva = data.subset("valid")
    return auc(model.predict(Xva), yva.astype(int))


def metric_reached(metric, reference, task):
    if task == "regression":
        return metric <= reference
    return metric >= reference


def find_cutoff(ranked, data, reference_metric, cfg=None, K_max=20):
    """Train cutoff models for K = 0..K_max and locate the plateau point.

    ``reference_metric`` should come from a reference model trained on the
    same splits (best validation RMSE for regression, AUC for
    classification). All K are evaluated, then the first K whose metric
    reaches the reference becomes K_stop (K_max if none does).
    """
    if K_max < 0:
        raise ConfigError("K_max must be nonnegative")
    if not ranked:
        raise ConfigError("ranked interaction list is empty")
    if cfg is None:
        cfg = TrainingConfig(l1_strength=0.0, l2_strength=1e-4)
    candidates = [cand for cand, _ in ranked]
    K_max = min(K_max, len(candidates))
    curve = []
    for K in range(K_max + 1):
        model = build_cutoff_model(data.p, candidates[:K], task=data.task,
                                   seed=cfg.seed + K)
        try:
            trained = train(model, data, cfg)
        except TrainingDivergedError as exc:
            exc.partial_curve = list(curve)
            raise
        curve.append(validation_metric(trained, data))
    K_stop = K_max
    for K, metric in enumerate(curve):
        if metric_reached(metric, reference_metric, data.task):
            K_stop = K
            break
    selected = [cand for cand, _ in prune_subsets(ranked[:K_stop])]
    return CutoffResult(selected=selected, curve=curve,
                        reference_metric=reference_metric, K_stop=K_stop)


def format_report(result):
    """Plain-text report of the cutoff curve and selected interactions."""
    lines = ["cutoff report", f"reference_metric: {result.reference_metric!r}",
             f"K_stop: {result.K_stop}", "curve:"]
    for K, v in enumerate(result.curve):
        lines.append(f"  K={K}: {v!r}")
    lines.append("selected:")
    for cand in result.selected:
        lines.append("  " + ",".join(str(i) for i in cand))
    return "\n".join(lines) + "\n"
