"""Offline minimization of realized loss sequences.

The regret comparator is computed with the same linear-optimization oracle
the learners use: a conditional-gradient loop with the classic 2/(s+2) step,
whose suboptimality after s iterations is at most 8 * beta * D^2 / (s+2).
When every round was a squared-distance loss the exact minimizer is the
projection of the mean center, and the better of the two candidates wins.
"""

from __future__ import annotations

import numpy as np

from .losses import LossFunction, block_sum
from .sets import FeasibleSet

__all__ = ["offline_frank_wolfe", "best_in_hindsight", "frank_wolfe_gap_bound"]


def frank_wolfe_gap_bound(smoothness: float, norm_bound: float, iterations: int) -> float:
    """Worst-case suboptimality of the conditional-gradient loop."""
    return 8.0 * smoothness * norm_bound * norm_bound / (iterations + 2.0)


def offline_frank_wolfe(objective: LossFunction, set_: FeasibleSet,
                        iterations: int) -> tuple[np.ndarray, float]:
    """Minimize a smooth convex objective over the set with oracle calls only.

    Returns (final iterate, objective value there). Starts from the oracle's
    zero-objective answer so the whole run is deterministic.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    x = set_.support_argmax(np.zeros(set_.dim))
    for s in range(int(iterations)):
        g = np.asarray(objective.gradient(x), dtype=float)
        if not np.all(np.isfinite(g)):
            raise FloatingPointError("non-finite gradient inside Frank-Wolfe")
        v = set_.support_argmax(-g)
        step = 2.0 / (s + 2.0)
        x = (1.0 - step) * x + step * v
    return x, float(objective.evaluate(x))


def best_in_hindsight(losses, set_: FeasibleSet, budget: int) -> tuple[np.ndarray, float]:
    """Best fixed action against the realized losses, via oracle-only solving.

    Runs Frank-Wolfe on the summed loss for ``budget`` iterations; for pure
    quadratic streams also evaluates the projected mean center and returns
    whichever candidate achieves the lower total loss.
    """
    losses = list(losses)
    if not losses:
        raise ValueError("best_in_hindsight needs at least one loss")
    total = block_sum(losses)
    point, value = offline_frank_wolfe(total, set_, budget)
    if all(loss.center is not None for loss in losses):
        mean_center = np.mean(np.stack([loss.center for loss in losses]), axis=0)
        try:
            candidate = set_.project(mean_center)
        except NotImplementedError:
            candidate = None
        if candidate is not None:
            cand_value = float(total.evaluate(candidate))
            if cand_value < value:
                point, value = candidate, cand_value
    return point, value
