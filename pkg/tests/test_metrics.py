import numpy as np
import pytest

from nninteract import (aggregate_trials, auc, count_correct_before_fp,
                        pairwise_labels, top_rank_recall)
from nninteract.errors import ConfigError, MetricError
from nninteract.metrics import all_pairs, pairwise_auc
from nninteract.synth import ground_truth


def test_auc_perfect_separation():
    assert auc([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0]) == 1.0


def test_auc_all_ties():
    assert auc([0.5, 0.5, 0.5, 0.5], [1, 0, 1, 0]) == 0.5


def test_auc_hand_example():
    assert auc([0.9, 0.8, 0.1], [1, 0, 1]) == 0.5


def test_auc_single_class_rejected():
    with pytest.raises(MetricError):
        auc([0.1, 0.2], [1, 1])


def test_auc_invariant_under_monotone_transform():
    rng = np.random.default_rng(0)
    scores = rng.normal(0, 1, 50)
    labels = rng.integers(0, 2, 50)
    labels[0], labels[1] = 0, 1
    base = auc(scores, labels)
    assert auc(np.exp(scores), labels) == pytest.approx(base)
    assert auc(3 * scores + 7, labels) == pytest.approx(base)


def test_pairwise_labels_subset_expansion():
    labels = pairwise_labels([(1, 2, 3)], 4)
    pairs = all_pairs(4)
    positives = {pairs[i] for i in np.flatnonzero(labels)}
    assert positives == {(1, 2), (1, 3), (2, 3)}


def test_pairwise_labels_empty_truth():
    assert pairwise_labels([], 5).sum() == 0


def test_pairwise_labels_f1_count():
    labels = pairwise_labels(ground_truth("F1"), 10)
    assert labels.sum() == 11


def test_pairwise_labels_brute_force_union():
    rng = np.random.default_rng(1)
    for _ in range(20):
        p = int(rng.integers(3, 10))
        truth = []
        for _ in range(rng.integers(1, 4)):
            size = int(rng.integers(2, p + 1))
            truth.append(tuple(sorted(rng.choice(np.arange(1, p + 1), size, replace=False))))
        labels = pairwise_labels(truth, p)
        union = set()
        for cand in truth:
            for i in cand:
                for j in cand:
                    if i < j:
                        union.add((i, j))
        assert labels.sum() == len(union)


def test_top_rank_recall_examples():
    ranked = [((1, 2), 3.0), ((3, 4), 2.0), ((5, 6), 1.0)]
    assert top_rank_recall(ranked, [(1, 2), (5, 6)]) == 0.5
    ranked = [((1, 2), 3.0), ((1, 2, 3), 2.0)]
    assert top_rank_recall(ranked, [(1, 2, 3)]) == 1.0
    truth = [(1, 2), (3, 4)]
    assert top_rank_recall([((3, 4), 2.0), ((1, 2), 1.0)], truth) == 1.0


def test_top_rank_recall_subset_insertion_invariant():
    truth = [(1, 2, 3), (4, 5)]
    base = [((1, 2, 3), 5.0), ((4, 5), 4.0)]
    padded = [((1, 2, 3), 5.0), ((1, 2), 4.5), ((2, 3), 4.2), ((4, 5), 4.0)]
    assert top_rank_recall(base, truth) == top_rank_recall(padded, truth) == 1.0


def test_top_rank_recall_empty_truth():
    with pytest.raises(MetricError):
        top_rank_recall([((1, 2), 1.0)], [])


def test_count_correct_before_fp():
    truth = [(1, 2), (3, 4), (5, 6), (7, 8)]
    ranked = [((c, c + 1), 9.0 - c) for c in (1, 3, 5, 7)] + [((2, 9), 0.1)]
    assert count_correct_before_fp(ranked, truth) == 4
    assert count_correct_before_fp([((9, 10), 1.0)], truth) == 0
    assert count_correct_before_fp([((1, 2), 1.0)], []) == 0


def test_aggregate_trials():
    s = aggregate_trials([0, 10, 5, 5, 5], drop_extremes=1)
    assert s.mean == 5.0 and s.std == 0.0 and s.trials_dropped == 1
    s = aggregate_trials([1.0, 2.0, 3.0], drop_extremes=0)
    assert s.mean == pytest.approx(2.0)
    assert s.std == pytest.approx(1.0)


def test_aggregate_trials_too_few():
    with pytest.raises(ConfigError):
        aggregate_trials([1.0, 2.0], drop_extremes=1)


def test_pairwise_auc_on_ideal_matrix():
    truth = [(1, 2, 3)]
    M = np.zeros((4, 4))
    for i, j in [(0, 1), (0, 2), (1, 2)]:
        M[i, j] = M[j, i] = 1.0
    assert pairwise_auc(M, truth) == 1.0
