"""Vectorized shell summation for cone-restricted double series.

The three double series in this package (Kronecker f, trapezoid g, rank-2 h)
all sum a Gaussian-type term over the integer pairs lying in a quadrant-like
cone attached to the slope coordinates of the arguments.  This helper owns
the shared enumeration: shells |m|,|n| <= R in deterministic order, with the
cone filter and the +/-1 weight applied per shell.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable

import numpy as np

from .core import ConvergenceBudgetExceeded, DEFAULT_BUDGET, SummationBudget


@lru_cache(maxsize=None)
def shell_mn(radius: int) -> tuple[np.ndarray, np.ndarray]:
    """Integer pairs of sup-norm exactly radius, lexicographic, as arrays."""
    if radius == 0:
        return np.array([0]), np.array([0])
    pairs = []
    for m in range(-radius, radius + 1):
        if abs(m) == radius:
            pairs.extend((m, n) for n in range(-radius, radius + 1))
        else:
            pairs.append((m, -radius))
            pairs.append((m, radius))
    arr = np.array(pairs)
    return arr[:, 0].copy(), arr[:, 1].copy()


def sum_cone_series(
    shell_term: Callable[[np.ndarray, np.ndarray], np.ndarray],
    budget: SummationBudget = DEFAULT_BUDGET,
) -> complex:
    """Sum shell_term(m, n) over Z^2 shells with the stall-based stop rule.

    ``shell_term`` receives the index arrays of one shell and returns the
    per-index term values (zero for indices outside the summation cone).
    """
    total = 0.0 + 0.0j
    stall = 0
    for radius in range(budget.max_shell + 1):
        m, n = shell_mn(radius)
        shell_sum = complex(np.sum(shell_term(m, n)))
        total += shell_sum
        if abs(shell_sum) < budget.target_tol:
            stall += 1
            if stall >= budget.stall_shells:
                return total
        else:
            stall = 0
    raise ConvergenceBudgetExceeded(
        f"double series did not stall within shell radius {budget.max_shell}"
    )
