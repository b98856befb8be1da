"""The Kronecker function f(z1, z2; tau).

Two independent evaluation routes: the cone-restricted double series and the
classical closed form as a ratio of theta functions.
"""
from __future__ import annotations

import numpy as np

from .core import (
    DEFAULT_BUDGET,
    GUARD,
    Modulus,
    PoleProximity,
    SummationBudget,
    TWO_PI_I,
    alpha,
    dist_to_integers,
)
from .doubleseries import sum_cone_series
from .theta import theta, theta_prime


def _check_alpha_guards(tau: Modulus, **zs: complex) -> dict[str, float]:
    out = {}
    for name, z in zs.items():
        a = alpha(z, tau)
        if dist_to_integers(a) <= GUARD:
            raise PoleProximity(f"alpha({name}) = {a} is within {GUARD} of an integer")
        out[name] = a
    return out


def f_series(
    z1: complex, z2: complex, tau: Modulus, budget: SummationBudget = DEFAULT_BUDGET
) -> complex:
    """Double series over (alpha(z1)+m)(alpha(z2)+n) > 0 weighted by sign(alpha(z1)+m)."""
    a = _check_alpha_guards(tau, z1=z1, z2=z2)
    a1, a2 = a["z1"], a["z2"]
    t = tau.tau

    def shell_term(m, n):
        s = a1 + m
        mask = s * (a2 + n) > 0
        out = np.zeros(len(m), dtype=complex)
        mm, nn = m[mask], n[mask]
        out[mask] = np.sign(s[mask]) * np.exp(
            TWO_PI_I * (t * (mm * nn) + nn * z1 + mm * z2)
        )
        return out

    return sum_cone_series(shell_term, budget)


def f_closed(
    z1: complex, z2: complex, tau: Modulus, budget: SummationBudget = DEFAULT_BUDGET
) -> complex:
    """Closed form (theta'(xi)/2 pi i) * theta(z1+z2-xi) / (theta(z1-xi) theta(z2-xi))."""
    xi = tau.xi
    den1 = theta(z1 - xi, tau, budget)
    den2 = theta(z2 - xi, tau, budget)
    scale = abs(theta(0, tau, budget))
    for name, den in (("z1", den1), ("z2", den2)):
        if abs(den) <= GUARD * scale:
            raise PoleProximity(f"theta({name} - xi) = {den} is too close to zero")
    num = theta(z1 + z2 - xi, tau, budget)
    const = theta_prime(xi, tau, budget) / TWO_PI_I
    return const * num / (den1 * den2)
