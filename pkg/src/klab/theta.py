"""Classical theta function, its z-derivative, and the eta-product constant.

Conventions: theta(z, tau) = sum_n e(tau n^2 / 2 + n z), an entire even
function of z with a simple zero at xi = (tau + 1) / 2 and its translates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    DEFAULT_BUDGET,
    TWO_PI_I,
    Modulus,
    SummationBudget,
    e_of,
    sum_by_shells_traced,
)


@dataclass(frozen=True)
class ThetaValue:
    """A theta evaluation together with the shell radius the sum used."""

    value: complex
    shells_used: int


def theta_value(z: complex, tau: Modulus, budget: SummationBudget = DEFAULT_BUDGET) -> ThetaValue:
    t = tau.tau

    def term(idx):
        n = idx[0]
        return e_of(t * (n * n) / 2 + n * z)

    value, shells = sum_by_shells_traced(term, budget)
    return ThetaValue(value, shells)


def theta(z: complex, tau: Modulus, budget: SummationBudget = DEFAULT_BUDGET) -> complex:
    """theta(z, tau) = sum_n e(tau n^2/2 + n z)."""
    return theta_value(z, tau, budget).value


def theta_scaled(
    z: complex, scale: int, tau: Modulus, budget: SummationBudget = DEFAULT_BUDGET
) -> complex:
    """theta(z, scale * tau) for a positive integer scale."""
    return theta(z, tau.scaled(scale), budget)


def theta_prime_value(
    z: complex, tau: Modulus, budget: SummationBudget = DEFAULT_BUDGET
) -> ThetaValue:
    t = tau.tau

    def term(idx):
        n = idx[0]
        return TWO_PI_I * n * e_of(t * (n * n) / 2 + n * z)

    value, shells = sum_by_shells_traced(term, budget)
    return ThetaValue(value, shells)


def theta_prime(z: complex, tau: Modulus, budget: SummationBudget = DEFAULT_BUDGET) -> complex:
    """d theta / dz by term-wise differentiation: sum_n 2 pi i n e(tau n^2/2 + n z)."""
    return theta_prime_value(z, tau, budget).value


def eta_cubed_constant(tau: Modulus, budget: SummationBudget = DEFAULT_BUDGET) -> complex:
    """The product prod_{n>=1} (1 - q^n)^3, which equals theta'((tau+1)/2) / 2 pi i.

    Truncated at the smallest N with |q|^(N+1) * 3 / (1 - |q|) < target_tol,
    a first-order bound on the log of the dropped factors.
    """
    q = tau.q
    aq = abs(q)
    if aq == 0.0:
        return 1.0 + 0.0j
    bound = budget.target_tol * (1 - aq) / 3
    n_terms = max(1, math.ceil(math.log(bound) / math.log(aq)) - 1) if bound < 1 else 1
    prod = 1.0 + 0.0j
    qn = 1.0 + 0.0j
    for _ in range(1, n_terms + 1):
        qn *= q
        prod *= (1 - qn) ** 3
    return prod
