import numpy as np
import pytest

from nninteract import Dataset, TrainingConfig, build_cutoff_model, find_cutoff, split
from nninteract.errors import ConfigError


def _data(n=900, seed=0):
    rng = np.random.default_rng(seed)
    X = rng.uniform(-1, 1, (n, 3))
    y = X[:, 0] * X[:, 1] + 0.5 * X[:, 2]
    return split(Dataset(features=X, target=y), (0.6, 0.2, 0.2), seed)


def test_build_pure_additive():
    model = build_cutoff_model(3, [], seed=0)
    assert model.main is None
    assert len(model.univariate) == 3
    assert model.interactions is None
    assert model.univariate[0].layer_sizes == [1, 10, 10, 10]


def test_build_with_interaction():
    model = build_cutoff_model(4, [(1, 2)], seed=0)
    assert len(model.interactions) == 1
    assert model.interactions[0][0] == (1, 2)
    assert model.interactions[0][1].layer_sizes == [2, 10, 10, 10]


def test_build_rejects_invalid_candidate():
    with pytest.raises(ConfigError):
        build_cutoff_model(3, [(1, 5)])
    with pytest.raises(ConfigError):
        build_cutoff_model(3, [(2,)])


def test_interaction_model_beats_additive():
    data = _data()
    cfg = TrainingConfig(l1_strength=0, l2_strength=1e-4, max_epochs=60,
                         patience=60, seed=1)
    ranked = [((1, 2), 1.0)]
    result = find_cutoff(ranked, data, reference_metric=0.0, cfg=cfg, K_max=1)
    # never-reachable reference: full curve computed, interaction model wins
    assert len(result.curve) == 2
    assert result.curve[1] < result.curve[0]
    assert result.K_stop == 1


def test_cutoff_fires_immediately_on_weak_reference():
    data = _data(n=600)
    cfg = TrainingConfig(l1_strength=0, l2_strength=1e-4, max_epochs=15,
                         patience=15, seed=2)
    result = find_cutoff([((1, 2), 1.0)], data, reference_metric=1e9, cfg=cfg, K_max=1)
    assert result.K_stop == 0
    assert result.selected == []


def test_cutoff_kmax_cap():
    data = _data(n=600)
    cfg = TrainingConfig(l1_strength=0, l2_strength=1e-4, max_epochs=10,
                         patience=10, seed=3)
    ranked = [((1, 2), 3.0), ((1, 3), 2.0), ((2, 3), 1.0), ((1, 2, 3), 0.5)]
    result = find_cutoff(ranked, data, reference_metric=0.0, cfg=cfg, K_max=3)
    assert result.K_stop == 3
    assert len(result.curve) == 4
    assert all(np.isfinite(v) for v in result.curve)


def test_cutoff_selected_is_pruned():
    data = _data(n=600)
    cfg = TrainingConfig(l1_strength=0, l2_strength=1e-4, max_epochs=10,
                         patience=10, seed=4)
    ranked = [((1, 2, 3), 3.0), ((1, 2), 2.0)]
    result = find_cutoff(ranked, data, reference_metric=0.0, cfg=cfg, K_max=2)
    assert result.selected == [(1, 2, 3)]


def test_cutoff_rejects_bad_args():
    data = _data(n=300)
    with pytest.raises(ConfigError):
        find_cutoff([], data, 1.0, K_max=2)
    with pytest.raises(ConfigError):
        find_cutoff([((1, 2), 1.0)], data, 1.0, K_max=-1)
