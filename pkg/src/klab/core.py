"""Shared numerics: exponential conventions, truncation policy, error taxonomy.

Every series in this package is summed over integer index tuples grouped
into shells of increasing sup-norm radius, in a fixed deterministic order,
so results are bit-reproducible for a fixed budget.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

TWO_PI_I = 2j * math.pi

#: Guard radius in alpha-coordinates: evaluations closer than this to a pole
#: locus or cone boundary are rejected rather than attempted.
GUARD = 1e-9


class EvalError(Exception):
    """Base class for evaluation failures.

    ``kind`` is the machine-readable discriminator; the exception message is
    human-facing diagnostic text only.
    """

    kind = "EvalError"

    @property
    def detail(self) -> str:
        return str(self)


class DomainError(EvalError):
    kind = "DomainError"


class PoleProximity(EvalError):
    kind = "PoleProximity"


class BoundaryProximity(EvalError):
    kind = "BoundaryProximity"


class ConvergenceBudgetExceeded(EvalError):
    kind = "ConvergenceBudgetExceeded"


@dataclass(frozen=True)
class Modulus:
    """Complex modulus tau in the upper half-plane."""

    tau: complex

    def __post_init__(self):
        tau = complex(self.tau)
        object.__setattr__(self, "tau", tau)
        if not (tau.imag > 0):
            raise DomainError(f"tau={tau!r} must lie in the upper half-plane")

    @property
    def q(self) -> complex:
        """Nome e(tau); |q| < 1."""
        return e_of(self.tau)

    @property
    def xi(self) -> complex:
        """Half-period point (tau + 1) / 2, the zero of the theta function."""
        return (self.tau + 1) / 2

    def scaled(self, k: int) -> "Modulus":
        """Modulus with tau replaced by k * tau (k a positive integer)."""
        if k < 1 or k != int(k):
            raise DomainError(f"scale {k!r} must be a positive integer")
        return Modulus(k * self.tau)


@dataclass(frozen=True)
class SummationBudget:
    """Truncation policy shared by every series evaluator.

    Summation stops after ``stall_shells`` consecutive shells each contribute
    less than ``target_tol`` in absolute value; ``max_shell`` caps the shell
    radius and exceeding it raises ConvergenceBudgetExceeded.
    """

    target_tol: float = 1e-12
    max_shell: int = 200
    stall_shells: int = 2

    def __post_init__(self):
        if not self.target_tol > 0:
            raise DomainError("target_tol must be positive")
        if self.max_shell < 1:
            raise DomainError("max_shell must be >= 1")
        if self.stall_shells < 1:
            raise DomainError("stall_shells must be >= 1")


DEFAULT_BUDGET = SummationBudget()


def e_of(z: complex) -> complex:
    """The exponential e(z) = exp(2 pi i z)."""
    return cmath.exp(TWO_PI_I * z)


def alpha(z: complex, tau: Modulus) -> float:
    """Slope coordinate Im(z) / Im(tau)."""
    return complex(z).imag / tau.tau.imag


def dist_to_integers(x: float) -> float:
    """Distance from x to the nearest integer, in [0, 1/2]."""
    f = x - math.floor(x)
    return min(f, 1.0 - f)


@lru_cache(maxsize=None)
def shell_points(radius: int, dim: int) -> tuple:
    """Integer tuples of sup-norm exactly ``radius``, lexicographically sorted."""
    if dim == 1:
        return ((0,),) if radius == 0 else ((-radius,), (radius,))
    pts = []
    rng = range(-radius, radius + 1)
    for head in rng:
        if abs(head) == radius:
            for rest in _box_points(radius, dim - 1):
                pts.append((head,) + rest)
        else:
            for rest in shell_points(radius, dim - 1):
                pts.append((head,) + rest)
    return tuple(sorted(pts))


@lru_cache(maxsize=None)
def _box_points(radius: int, dim: int) -> tuple:
    if dim == 0:
        return ((),)
    out = []
    for head in range(-radius, radius + 1):
        for rest in _box_points(radius, dim - 1):
            out.append((head,) + rest)
    return tuple(out)


def sum_by_shells_traced(
    term: Callable[[Sequence[int]], complex],
    budget: SummationBudget = DEFAULT_BUDGET,
    dim: int = 1,
) -> tuple[complex, int]:
    """Sum ``term`` over Z^dim by sup-norm shells; returns (value, shells_used)."""
    total = 0.0 + 0.0j
    stall = 0
    for radius in range(budget.max_shell + 1):
        shell_sum = 0.0 + 0.0j
        for idx in shell_points(radius, dim):
            shell_sum += term(idx)
        total += shell_sum
        if abs(shell_sum) < budget.target_tol:
            stall += 1
            if stall >= budget.stall_shells:
                return total, radius
        else:
            stall = 0
    raise ConvergenceBudgetExceeded(
        f"no {budget.stall_shells} consecutive shells below {budget.target_tol} "
        f"within radius {budget.max_shell}"
    )


def sum_by_shells(
    term: Callable[[Sequence[int]], complex],
    budget: SummationBudget = DEFAULT_BUDGET,
    dim: int = 1,
) -> complex:
    """Deterministic shell summation over Z^dim; see sum_by_shells_traced."""
    return sum_by_shells_traced(term, budget, dim)[0]
