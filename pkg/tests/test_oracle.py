import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from equiloc.oracle import QuadratureGrid, pushforward_histogram, sphere_integral

GRID = QuadratureGrid(64, 64)


@pytest.mark.parametrize("n_lat, n_lon", [(8, 4), (64, 64), (200, 16)])
def test_weight_sum(n_lat, n_lon):
    assert abs(QuadratureGrid(n_lat, n_lon).weights.sum() - 4 * math.pi) < 1e-12


def test_area():
    assert abs(sphere_integral(lambda x, y, z: 1, GRID) - 4 * math.pi) < 1e-9


def test_odd_symmetry():
    assert abs(sphere_integral(lambda x, y, z: z, GRID)) < 1e-10


def test_second_moments():
    for f in (lambda x, y, z: x * x, lambda x, y, z: y * y, lambda x, y, z: z * z):
        assert abs(sphere_integral(f, GRID) - 4 * math.pi / 3) < 1e-12


@pytest.mark.parametrize("t", [0.5, 2.0, 5.0])
def test_exponential(t):
    val = sphere_integral(lambda x, y, z: np.exp(1j * t * z), GRID)
    assert abs(val - 4 * math.pi * math.sin(t) / t) < 1e-8


@pytest.mark.parametrize("t", [1.0, 2.0, 5.0, 10.0])
def test_refinement_reduces_error(t):
    exact = 4 * math.pi * math.sin(t) / t
    errs = [abs(sphere_integral(lambda x, y, z: np.exp(1j * t * z), QuadratureGrid(n, 4)) - exact)
            for n in (2, 4, 8, 16, 32)]
    # monotone until round-off takes over
    assert all(b <= a or b < 1e-13 for a, b in zip(errs, errs[1:]))


def test_uniform_pushforward():
    hist = pushforward_histogram(lambda x, y, z: z, QuadratureGrid(1000, 8), 20, (-1.0, 1.0))
    assert np.all(np.abs(hist.density[1:-1] / (2 * math.pi) - 1) < 0.02)


def test_constant_map():
    hist = pushforward_histogram(lambda x, y, z: 0.3, GRID, 10)
    masses = hist.density * hist.widths
    assert np.count_nonzero(masses) == 1
    assert abs(masses.sum() - 4 * math.pi) < 1e-9


def test_square_map_is_decreasing():
    hist = pushforward_histogram(lambda x, y, z: z * z, QuadratureGrid(1000, 8), 10, (0.0, 1.0))
    assert np.all(np.diff(hist.density) < 0)


def test_bins_minimum():
    with pytest.raises(ValueError):
        pushforward_histogram(lambda x, y, z: z, GRID, 7)


@given(st.sampled_from([
    lambda x, y, z: z, lambda x, y, z: x + 2 * y, lambda x, y, z: z ** 3, lambda x, y, z: np.abs(x),
]), st.integers(8, 40))
def test_histogram_mass(mu, bins):
    assert abs(pushforward_histogram(mu, GRID, bins).total_mass() - 4 * math.pi) < 1e-9
