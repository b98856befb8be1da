import math
import random

import numpy as np
import pytest

from klab.core import DEFAULT_BUDGET, Modulus, PoleProximity, e_of
from klab.kronecker import f_closed, f_series

from conftest import sample_z


class TestFSeries:
    def test_symmetry(self, tau_i, rng):
        for _ in range(10):
            z1, z2 = sample_z(rng, tau_i), sample_z(rng, tau_i)
            assert abs(f_series(z1, z2, tau_i) - f_series(z2, z1, tau_i)) < 1e-10

    def test_period_one(self, tau_i, rng):
        z1, z2 = sample_z(rng, tau_i), sample_z(rng, tau_i)
        assert abs(f_series(z1 + 1, z2, tau_i) - f_series(z1, z2, tau_i)) < 1e-12

    def test_odd(self, tau_i, rng):
        for _ in range(5):
            z1, z2 = sample_z(rng, tau_i), sample_z(rng, tau_i)
            assert abs(f_series(-z1, -z2, tau_i) + f_series(z1, z2, tau_i)) < 1e-10

    def test_guard_rejects_integer_alpha(self, tau_i):
        with pytest.raises(PoleProximity):
            f_series(0.3, 0.5 * tau_i.tau + 0.1, tau_i)

    @pytest.mark.parametrize("m", [-1, 0, 1])
    @pytest.mark.parametrize("n", [-1, 0, 1])
    def test_t_shift_first_argument(self, tau_i, m, n):
        t = tau_i.tau
        z1, z2 = 0.31 * t + 0.17, 0.53 * t + 0.41
        base = f_series(z1, z2, tau_i)
        got = f_series(z1 + m + n * t, z2, tau_i)
        assert abs(got - e_of(-n * z2) * base) < 1e-9

    @pytest.mark.parametrize("m", [-1, 0, 1])
    @pytest.mark.parametrize("n", [-1, 0, 1])
    def test_t_shift_second_argument(self, tau_i, m, n):
        t = tau_i.tau
        z1, z2 = 0.31 * t + 0.17, 0.53 * t + 0.41
        base = f_series(z1, z2, tau_i)
        got = f_series(z1, z2 + m + n * t, tau_i)
        assert abs(got - e_of(-n * z1) * base) < 1e-9

    def test_tau_period_one(self, tau_i):
        t = tau_i.tau
        z1, z2 = 0.31 * t + 0.17, 0.53 * t + 0.41
        assert abs(
            f_series(z1, z2, Modulus(t + 1)) - f_series(z1, z2, tau_i)
        ) < 1e-10


class TestFClosed:
    def test_matches_series_100_points(self, tau_i):
        rng = random.Random(7)
        worst = 0.0
        for _ in range(100):
            z1, z2 = sample_z(rng, tau_i), sample_z(rng, tau_i)
            worst = max(
                worst, abs(f_series(z1, z2, tau_i) - f_closed(z1, z2, tau_i))
            )
        assert worst < 1e-9

    def test_zero_at_lattice_sum(self, tau_i):
        # numerator theta(z1 + z2 - xi) vanishes when z1 + z2 lies on the
        # period lattice (the theta zero xi satisfies 2 xi = tau + 1)
        z1 = 0.31 * tau_i.tau + 0.17
        z2 = -z1 + 1 + tau_i.tau
        assert abs(f_closed(z1, z2, tau_i)) < 1e-9

    def test_simple_pole_growth(self, tau_i):
        z2 = 0.53 * tau_i.tau + 0.41
        ts = [1e-2, 1e-3, 1e-4]
        vals = [abs(f_closed(t * (1 + 1j), z2, tau_i)) for t in ts]
        slope = np.polyfit(np.log(ts), np.log(vals), 1)[0]
        assert abs(slope + 1) < 0.05

    def test_functional_equation(self, tau_i):
        t = tau_i.tau
        z1, z2 = 0.31 * t + 0.17, 0.53 * t + 0.41
        lhs = f_series(z1 / t, z2 / t, Modulus(-1 / t))
        rhs = t * e_of(z1 * z2 / t) * f_series(z1, z2, tau_i)
        assert abs(lhs - rhs) < 1e-8

    def test_functional_equation_wrong_root_fails(self, tau_i):
        t = tau_i.tau
        z1, z2 = 0.31 * t + 0.17, 0.53 * t + 0.41
        lhs = f_series(z1 / t, z2 / t, Modulus(-1 / t))
        rhs = -t * e_of(z1 * z2 / t) * f_series(z1, z2, tau_i)
        assert abs(lhs - rhs) / abs(rhs) > 1e-2
