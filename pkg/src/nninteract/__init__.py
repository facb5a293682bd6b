"""Feature interaction detection from feedforward network weights."""

__version__ = "0.1.0"

from .data import Dataset, add_noise, load_csv, save_csv, split
from .detection import (
    AVERAGING_KINDS,
    aggregated_weights,
    average,
    bivariate_relu_beta5,
    beta5_numeric_oracle,
    build_graph,
    greedy_rank,
    input_ancestors,
    pairwise_strengths,
    prune_subsets,
    unit_interaction_strength,
)
from .cutoff import CutoffResult, build_cutoff_model, find_cutoff
from .metrics import (
    aggregate_trials,
    auc,
    count_correct_before_fp,
    pairwise_auc,
    pairwise_labels,
    top_rank_recall,
)
from .modelio import load_model, save_model
from .network import CompositeModel, DenseNetwork, gradient_check, init_network
from .synth import generate, generate_large_p, ground_truth
from .training import TrainingConfig, train
