"""Interaction detection from learned weights.

Everything here operates on a trained network's first weight matrix and the
cumulative-absolute-weight influence scores of its first hidden layer. The
greedy ranking walks each hidden unit's weight row, proposing the top-j
features by absolute weight for every order j, and accumulates per-unit
strengths into a global ranking.
"""

import itertools

import networkx as nx
import numpy as np

from .errors import ConfigError, NetworkShapeError

AVERAGING_KINDS = ("maximum", "rms", "mean", "geometric", "harmonic", "minimum")


def average(kind, values):
    """Generalized-mean summary of nonnegative values.

    Geometric and harmonic means return 0 when any value is 0 (limit
    convention).
    """
    if kind not in AVERAGING_KINDS:
        raise ConfigError(f"unknown averaging kind {kind!r}")
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ConfigError("average of empty value list")
    if kind == "maximum":
        return float(v.max())
    if kind == "rms":
        return float(np.sqrt(np.mean(v ** 2)))
    if kind == "mean":
        return float(v.mean())
    if kind == "geometric":
        if np.any(v == 0):
            return 0.0
        return float(np.exp(np.mean(np.log(v))))
    if kind == "harmonic":
        if np.any(v == 0):
            return 0.0
        return float(v.size / np.sum(1.0 / v))
    return float(v.min())


def aggregated_weights(network, layer):
    """Influence score of every unit in hidden layer ``layer`` (1-based).

    The score is the cumulative product of entrywise absolute weight
    matrices from the output down to the layer: for the last hidden layer it
    is just |w_out|. It upper-bounds the output gradient magnitude with
    respect to the layer's activations.
    """
    L = network.depth
    if not (1 <= layer <= L):
        raise ConfigError(f"layer must be in 1..{L}, got {layer}")
    z = np.abs(network.output_weights)
    for l in range(L - 1, layer - 1, -1):
        z = z @ np.abs(network.weights[l])
    return z


def unit_interaction_strength(z_i, w_row, candidate, kind="minimum"):
    """Strength contributed by one hidden unit to one candidate."""
    w_row = np.asarray(w_row, dtype=float)
    idx = [i - 1 for i in candidate]
    if any(i < 0 or i >= w_row.shape[0] for i in idx):
        raise ConfigError(f"candidate {candidate} out of range for {w_row.shape[0]} features")
    return float(z_i) * average(kind, np.abs(w_row[idx]))


def _row_top_order(abs_row):
    """Feature positions sorted by |weight| descending, lower index first on ties."""
    p = abs_row.shape[0]
    return np.lexsort((np.arange(p), -abs_row))


def unit_proposals(W1, z1, kind="minimum"):
    """Per-unit candidate proposals: yields (unit, candidate, strength).

    ``candidate`` is a tuple of ascending 1-based feature indices of
    cardinality 2..p; each unit proposes exactly one candidate per order.
    """
    W1 = np.asarray(W1, dtype=float)
    z1 = np.asarray(z1, dtype=float)
    if W1.ndim != 2 or z1.shape != (W1.shape[0],):
        raise NetworkShapeError(
            f"weight matrix {W1.shape} inconsistent with influence vector {z1.shape}")
    p = W1.shape[1]
    for r in range(W1.shape[0]):
        abs_row = np.abs(W1[r])
        order = _row_top_order(abs_row)
        for j in range(2, p + 1):
            cand = tuple(sorted(int(i) + 1 for i in order[:j]))
            strength = float(z1[r]) * average(kind, abs_row[order[:j]])
            yield r, cand, strength


def greedy_rank(W1, z1, kind="minimum"):
    """Variable-order interaction ranking from first-layer weights.

    Returns a list of ``(candidate, strength)`` sorted by strength
    descending, ties broken by cardinality then lexicographic indices.
    """
    strengths = {}
    for _, cand, s in unit_proposals(W1, z1, kind):
        strengths[cand] = strengths.get(cand, 0.0) + s
    return sorted(strengths.items(), key=lambda kv: (-kv[1], len(kv[0]), kv[0]))


def pairwise_strengths(W1, z1):
    """Symmetric p x p matrix of pairwise strengths under minimum averaging.

    Entry (i, j) sums min(|W1[s, i]|, |W1[s, j]|) weighted by the unit
    influence over all first-layer units s. Diagonal is zero.
    """
    W1 = np.asarray(W1, dtype=float)
    z1 = np.asarray(z1, dtype=float)
    if W1.ndim != 2 or z1.shape != (W1.shape[0],):
        raise NetworkShapeError(
            f"weight matrix {W1.shape} inconsistent with influence vector {z1.shape}")
    p = W1.shape[1]
    A = np.abs(W1)
    M = np.zeros((p, p))
    for s in range(W1.shape[0]):
        M += z1[s] * np.minimum(A[s][:, None], A[s][None, :])
    np.fill_diagonal(M, 0.0)
    return M


def prune_subsets(ranked):
    """Drop every candidate that is a subset of a higher-ranked candidate."""
    kept = []
    kept_sets = []
    for cand, strength in ranked:
        cs = set(cand)
        if any(cs < ks or cs == ks for ks in kept_sets):
            continue
        kept.append((cand, strength))
        kept_sets.append(cs)
    return kept


def build_graph(network):
    """Directed acyclic graph over inputs and hidden units.

    Node ``(l, i)`` is unit ``i`` (1-based) of layer ``l`` (0 = inputs); an
    edge exists wherever the connecting weight is nonzero.
    """
    g = nx.DiGraph()
    sizes = network.layer_sizes
    for l, size in enumerate(sizes):
        for i in range(1, size + 1):
            g.add_node((l, i))
    for l, w in enumerate(network.weights, start=1):
        rows, cols = np.nonzero(w)
        for j, i in zip(rows, cols):
            g.add_edge((l - 1, int(i) + 1), (l, int(j) + 1))
    return g


def input_ancestors(graph, layer, unit):
    """Input feature indices (1-based) reachable backwards from a unit."""
    node = (layer, unit)
    if node not in graph:
        raise ConfigError(f"no unit {unit} in layer {layer}")
    return {i for (l, i) in nx.ancestors(graph, node) if l == 0}


def bivariate_relu_beta5(a1, a2):
    """Cross-term magnitude of the best quadratic fit to relu(a1*x1 + a2*x2)
    over the unit square (closed form)."""
    lo = min(a1 * a1, a2 * a2)
    hi = max(a1 * a1, a2 * a2)
    if hi == 0.0:
        return 0.0
    return 0.75 * (1.0 - lo / (5.0 * hi)) * min(abs(a1), abs(a2))


def beta5_numeric_oracle(a1, a2, grid=400):
    """Least-squares quadratic fit of relu(a1*x1 + a2*x2) on a lattice over
    [-1, 1]^2; returns coefficients (b0, b1, b2, b3, b4, b5)."""
    if grid < 50:
        raise ConfigError("grid must be at least 50")
    ticks = np.linspace(-1.0, 1.0, grid)
    X1, X2 = np.meshgrid(ticks, ticks)
    x1 = X1.ravel()
    x2 = X2.ravel()
    target = np.maximum(a1 * x1 + a2 * x2, 0.0)
    design = np.column_stack([np.ones_like(x1), x1, x2, x1 ** 2, x2 ** 2, x1 * x2])
    beta, *_ = np.linalg.lstsq(design, target, rcond=None)
    return tuple(float(b) for b in beta)
