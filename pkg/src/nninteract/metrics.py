"""Ranking evaluation metrics and trial aggregation."""

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .errors import ConfigError, MetricError


def auc(scores, labels):
    """Rank (Mann-Whitney) AUC with averaged ranks on ties."""
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels)
    if scores.shape != labels.shape:
        raise ConfigError("scores and labels must have equal length")
    n_pos = int(np.sum(labels == 1))
    n_neg = int(np.sum(labels == 0))
    if n_pos == 0 or n_neg == 0:
        raise MetricError("AUC needs at least one positive and one negative label")
    ranks = rankdata(scores)
    u = ranks[labels == 1].sum() - n_pos * (n_pos + 1) / 2
    return float(u / (n_pos * n_neg))


def all_pairs(p):
    """Unordered feature pairs (1-based), lexicographic order."""
    return [(i, j) for i in range(1, p + 1) for j in range(i + 1, p + 1)]


def pairwise_labels(truth, p):
    """Binary labels over all unordered pairs: positive iff the pair is a
    subset of some true interaction."""
    for cand in truth:
        if any(i < 1 or i > p for i in cand):
            raise ConfigError(f"interaction {cand} out of range for p={p}")
    truth_sets = [set(c) for c in truth]
    labels = []
    for i, j in all_pairs(p):
        labels.append(1 if any({i, j} <= t for t in truth_sets) else 0)
    return np.array(labels)


def pairwise_auc(matrix, truth):
    """AUC of the upper triangle of a pairwise strength matrix against the
    pair-subset expansion of the true interactions."""
    matrix = np.asarray(matrix, dtype=float)
    p = matrix.shape[0]
    iu = np.triu_indices(p, k=1)
    return auc(matrix[iu], pairwise_labels(truth, p))


def _correct_before_fp(ranked, truth):
    truth_sets = {frozenset(c) for c in truth}
    count = 0
    for cand, _ in ranked:
        cs = frozenset(cand)
        if cs in truth_sets:
            count += 1
        elif any(cs < t for t in truth_sets):
            continue        # redundant subset of a true interaction
        else:
            break           # first false positive
    return count


def count_correct_before_fp(ranked, truth):
    """True interactions ranked (exact match) before any false positive,
    ignoring candidates that are strict subsets of a true interaction."""
    if not truth:
        return 0
    return _correct_before_fp(ranked, truth)


def top_rank_recall(ranked, truth):
    """count_correct_before_fp normalized by the number of true interactions."""
    if not truth:
        raise MetricError("top-rank recall is undefined for empty ground truth")
    return _correct_before_fp(ranked, truth) / len(truth)


@dataclass
class TrialSummary:
    values: list
    mean: float
    std: float
    trials_dropped: int


def aggregate_trials(values, drop_extremes=0):
    """Drop the top and bottom ``drop_extremes`` values, then mean and sample
    standard deviation."""
    values = [float(v) for v in values]
    if drop_extremes < 0:
        raise ConfigError("drop_extremes must be nonnegative")
    if len(values) <= 2 * drop_extremes:
        raise ConfigError(
            f"need more than {2 * drop_extremes} trials, got {len(values)}")
    kept = sorted(values)
    if drop_extremes:
        kept = kept[drop_extremes:-drop_extremes]
    arr = np.array(kept)
    std = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
    return TrialSummary(values=values, mean=float(arr.mean()), std=std,
                        trials_dropped=drop_extremes)
