import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from equiloc.dhmeasure import PiecewisePoly, density_fourier_check, dh_density
from equiloc.localize import FixedPoint, ModelError, flip_sign, shift_model
from equiloc.models import cp2, load_builtin_model, s2
from equiloc.oracle import QuadratureGrid, pushforward_histogram
from equiloc.scalars import PiScalar, Weight, render_scalar

TS = [0.5, 1.0, 2.0, 5.0]
RANK_ONE = ["s2", "s2_double", "cp2_circle"]


def restrict_to_circle(m, a, b):
    """The rank-2 model seen by the circle generated by (a, b)."""
    pts = []
    for p in m.points:
        mu = p.mu.real_part()
        ws = tuple(Weight.imaginary([w.imag_part()[0] * a + w.imag_part()[1] * b]) for w in p.weights)
        pts.append(FixedPoint(p.id, Weight.real([mu[0] * a + mu[1] * b]), ws, p.sign))
    return type(m)(m.dim, 1, tuple(pts))


generic = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(
    lambda ab: ab[0] and ab[1] and ab[0] != ab[1])


def test_sphere_is_uniform():
    d = dh_density(s2())
    assert d.breakpoints == (Fraction(-1), Fraction(1))
    assert d.pieces == ((PiScalar(2, 1),),)
    assert d(0.3) == pytest.approx(2 * math.pi)
    assert d(1.5) == 0 and d(-1.01) == 0


def test_sphere_mass():
    assert render_scalar(dh_density(s2()).total_mass()) == "4*pi"


def test_shift_translates():
    c = Fraction(1, 2)
    d0, d1 = dh_density(s2()), dh_density(shift_model(s2(), [c]))
    assert d1.breakpoints == tuple(b - c for b in d0.breakpoints)
    for x in np.linspace(-2, 2, 41):
        assert d1(x) == pytest.approx(d0(x + float(c)))


def test_sphere_fourier_check():
    assert density_fourier_check(dh_density(s2()), s2(), TS) < 1e-9


def test_zero_frequency_is_mass():
    d = dh_density(load_builtin_model("cp2_circle"))
    assert abs(d.fourier(0.0) - complex(d.total_mass())) < 1e-12


@pytest.mark.parametrize("name", RANK_ONE)
def test_fourier_on_shipped_models(name):
    m = load_builtin_model(name)
    assert density_fourier_check(dh_density(m), m, TS) < 1e-8


def test_doubled_weight_model_against_pushforward():
    d = dh_density(load_builtin_model("s2_double"))
    assert d.pieces == ((PiScalar(1, 1),),)
    hist = pushforward_histogram(lambda x, y, z: 2 * z, QuadratureGrid(1000, 8), 20, (-2.0, 2.0))
    for j in range(1, 19):
        a, b = hist.edges[j], hist.edges[j + 1]
        assert hist.density[j] == pytest.approx(d.integral(a, b) / (b - a), rel=0.02)


def test_cp2_circle_tent():
    d = dh_density(load_builtin_model("cp2_circle"))
    assert d(1.0) == pytest.approx(2 * math.pi ** 2)
    assert render_scalar(d.total_mass()) == "2*pi^2"
    (left, right), = d.derivative_limits(0)
    assert left == pytest.approx(right)


def test_rank_two_rejected():
    with pytest.raises(ModelError):
        dh_density(cp2())


def test_bad_signs_detected():
    with pytest.raises(ModelError):
        dh_density(flip_sign(s2(), "north"))


@given(generic)
def test_cp2_circles_are_genuine_measures(ab):
    m = restrict_to_circle(cp2(), *ab)
    d = dh_density(m)
    mus = [p.mu.real_part()[0] for p in m.points]
    assert d.support == (min(mus), max(mus))
    lo, hi = (float(x) for x in d.support)
    assert all(d(x) >= -1e-12 for x in np.linspace(lo, hi, 101))
    # m = 2, so the density is continuous (order n/2 - 2 = 0)
    for left, right in d.derivative_limits(0):
        assert left == pytest.approx(right, abs=1e-9)
    # symplectic volume does not depend on the circle
    assert d.total_mass() == PiScalar(2, 2)
    assert density_fourier_check(d, m, TS) < 1e-8


def test_as_dict_shape():
    out = dh_density(s2()).as_dict()
    assert out == {"breakpoints": ["-1", "1"],
                   "pieces": [{"interval": ["-1", "1"], "coeffs": ["2*pi"]}],
                   "total_mass": "4*pi"}


def test_piecewise_eval_outside_support():
    p = PiecewisePoly((Fraction(0), Fraction(1)), ((PiScalar(1), PiScalar(1)),))
    assert p(-0.1) == 0 and p(0.5) == pytest.approx(1.5) and p(2) == 0
