"""Property tests for the ranking theory: gradient bound and the
higher-order-promotion guarantee."""

import numpy as np

from support import (higher_order_instances, random_instance,
                     ranking_strengths, promotion_guarantee_holds)


def test_higher_order_promotion_small():
    rng = np.random.default_rng(0)
    checked = 0
    while checked < 100:
        W1, z1 = random_instance(rng)
        _, strengths = ranking_strengths(W1, z1)
        for cand, subsets, holds in higher_order_instances(W1, z1):
            if holds:
                assert promotion_guarantee_holds(cand, subsets, strengths)
                checked += 1


def test_promotion_conclusion_not_vacuous():
    # at least some filtered instances have all subsets proposed (branch a)
    rng = np.random.default_rng(1)
    branch_a = 0
    for _ in range(300):
        W1, z1 = random_instance(rng)
        _, strengths = ranking_strengths(W1, z1)
        for cand, subsets, holds in higher_order_instances(W1, z1):
            if holds and all(s in strengths for s in subsets):
                branch_a += 1
    assert branch_a > 0
