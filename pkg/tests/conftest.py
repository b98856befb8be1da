import random

import pytest

from klab.core import Modulus


@pytest.fixture
def tau_i():
    return Modulus(1j)


@pytest.fixture
def tau_generic():
    return Modulus(0.3 + 0.9j)


@pytest.fixture
def rng():
    return random.Random(12345)


def sample_z(rng, tau, margin=0.05, offset=0.0):
    """Admissible point with alpha in (margin, 1 - margin) + offset."""
    a = offset + margin + (1 - 2 * margin) * rng.random()
    return a * tau.tau + rng.random()
