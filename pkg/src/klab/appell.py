"""Appell function kappa, the trapezoid series g, its resummation g0, and
the piecewise correction p bridging the two."""
from __future__ import annotations

import math

import numpy as np

from .core import (
    DEFAULT_BUDGET,
    GUARD,
    Modulus,
    PoleProximity,
    BoundaryProximity,
    SummationBudget,
    TWO_PI_I,
    alpha,
    dist_to_integers,
    e_of,
    sum_by_shells,
)
from .doubleseries import sum_cone_series
from .theta import theta


def kappa(
    y: complex, x: complex, tau: Modulus, budget: SummationBudget = DEFAULT_BUDGET
) -> complex:
    """kappa(y, x; tau) = sum_n e(tau n^2/2 + n x) / (e(n tau) - e(y)).

    Holomorphic in x; requires y to stay away from the period lattice so the
    denominators are well conditioned.
    """
    t = tau.tau
    ey = e_of(y)
    floor_ey = GUARD * abs(ey)

    def term(idx):
        n = idx[0]
        den = e_of(n * t) - ey
        if abs(den) < floor_ey:
            raise PoleProximity(f"e({n} tau) - e(y) = {den} below conditioning floor")
        return e_of(t * (n * n) / 2 + n * x) / den

    return sum_by_shells(term, budget)


def g_series(
    z1: complex, z2: complex, tau: Modulus, budget: SummationBudget = DEFAULT_BUDGET
) -> complex:
    """Trapezoid double series over (n + alpha(z1))(m + alpha(z2)) > 0."""
    a1 = alpha(z1, tau)
    a2 = alpha(z2, tau)
    for name, a in (("z1", a1), ("z2", a2)):
        if dist_to_integers(a) <= GUARD:
            raise PoleProximity(f"alpha({name}) = {a} is within {GUARD} of an integer")
    t = tau.tau

    def shell_term(m, n):
        s = m + a2
        mask = (n + a1) * s > 0
        out = np.zeros(len(m), dtype=complex)
        mm, nn = m[mask], n[mask]
        out[mask] = np.sign(s[mask]) * np.exp(
            TWO_PI_I * ((nn + mm / 2) * mm * t + mm * z1 + (mm + nn) * z2)
        )
        return out

    return sum_cone_series(shell_term, budget)


def g0(
    z1: complex, z2: complex, tau: Modulus, budget: SummationBudget = DEFAULT_BUDGET
) -> complex:
    """One-sided resummation g0(z1, z2) = sum_m e(m^2 tau/2 + m(z1+z2)) / (1 - e(m tau + z2))."""
    t = tau.tau

    def term(idx):
        m = idx[0]
        em = e_of(m * t + z2)
        den = 1 - em
        if abs(den) < GUARD * (1 + abs(em)):
            raise PoleProximity(f"1 - e({m} tau + z2) = {den} below conditioning floor")
        return e_of(t * (m * m) / 2 + m * (z1 + z2)) / den

    return sum_by_shells(term, budget)


def p_correction(z: complex, tau: Modulus) -> complex:
    """Finite piecewise sum p(z, tau); jumps when alpha(z) crosses an integer.

    For alpha(z) >= 0: - sum over 0 < n <= alpha(z) of e(-n^2 tau/2 + n z);
    for alpha(z) < 0:  + sum over alpha(z) < n <= 0 of the same terms.
    """
    a = alpha(z, tau)
    if dist_to_integers(a) <= GUARD:
        raise BoundaryProximity(f"alpha(z) = {a} is within {GUARD} of a jump")
    t = tau.tau
    if a >= 0:
        return -sum(
            (e_of(-t * (n * n) / 2 + n * z) for n in range(1, math.floor(a) + 1)),
            start=0j,
        )
    return sum(
        (e_of(-t * (n * n) / 2 + n * z) for n in range(math.floor(a) + 1, 1)),
        start=0j,
    )


def g0_minus_g(
    z1: complex, z2: complex, tau: Modulus, budget: SummationBudget = DEFAULT_BUDGET
) -> complex:
    """The bridge p(z1) * theta(z1 + z2), which equals g0 - g."""
    return p_correction(z1, tau) * theta(z1 + z2, tau, budget)
