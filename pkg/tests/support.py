"""Shared helpers for property and acceptance tests."""

import numpy as np

from nninteract.detection import greedy_rank, unit_proposals


def ranking_strengths(W1, z1):
    ranked = greedy_rank(W1, z1)
    return ranked, dict(ranked)


def higher_order_instances(W1, z1):
    """Yield (cand, subsets, assumption_holds) for every proposed interaction
    of order >= 3.

    The assumption: every unit that proposed one of the (d-1)-subsets of the
    candidate also proposed the candidate itself, with per-unit strength more
    than 1/d of the subset's per-unit strength.
    """
    per_unit = {}
    for unit, cand, s in unit_proposals(W1, z1):
        per_unit.setdefault(unit, {})[cand] = s
    ranked, strengths = ranking_strengths(W1, z1)
    proposed = set(strengths)
    for cand in proposed:
        d = len(cand)
        if d < 3:
            continue
        subsets = [tuple(sorted(set(cand) - {i})) for i in cand]
        holds = True
        for unit, props in per_unit.items():
            for s in subsets:
                if s in proposed and s in props:
                    if cand not in props or props[cand] <= props[s] / d:
                        holds = False
                        break
            if not holds:
                break
        yield cand, subsets, holds


def promotion_guarantee_holds(cand, subsets, strengths):
    """Either some proposed (d-1)-subset ranks strictly below the candidate,
    or some (d-1)-subset was never proposed at all."""
    proposed = set(strengths)
    a = any(s in proposed and strengths[cand] > strengths[s] for s in subsets)
    b = any(s not in proposed for s in subsets)
    return a or b


def random_instance(rng, max_units=6, max_p=6):
    p1 = int(rng.integers(1, max_units))
    p = int(rng.integers(3, max_p + 1))
    W1 = rng.normal(0, 1, (p1, p))
    z1 = rng.uniform(0.1, 2.0, p1)
    return W1, z1
