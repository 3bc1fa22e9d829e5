import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from equiloc.exppoly import ExpRationalSum
from equiloc.localize import (
    FixedPoint,
    FixedPointModel,
    IntegrandSpec,
    ModelError,
    NotPolynomial,
    bv_localize,
    dh_localize,
    euler_restriction,
    flip_sign,
    inverse_euler,
    localization_sum,
    model_from_dict,
    model_to_dict,
    polynomiality_check,
    scale_point_weights,
    shift_model,
)
from equiloc.models import builtin_names, cp2, load_builtin_model, s2
from equiloc.oracle import QuadratureGrid, sphere_integral
from equiloc.poly import MultiPoly, RationalFn
from equiloc.scalars import I, PiScalar, Weight

SHIPPED = ["s2", "s2_double", "cp2", "cp2_circle"]
t = MultiPoly.var(1, 0)


@st.composite
def models(draw):
    rank = draw(st.integers(1, 2))
    half = draw(st.integers(1, 2))
    npts = draw(st.integers(1, 3))
    coords = st.lists(st.integers(-3, 3), min_size=rank, max_size=rank)
    pts = []
    for k in range(npts):
        ws = tuple(Weight.imaginary(draw(coords.filter(any))) for _ in range(half))
        pts.append(FixedPoint(f"p{k}", Weight.real(draw(coords)), ws, draw(st.sampled_from([1, -1]))))
    return FixedPointModel(2 * half, rank, tuple(pts))


def test_shipped_models_present():
    names = builtin_names()
    for n in SHIPPED:
        assert f"{n}.json" in names


class TestSphere:
    def test_symplectic_volume(self):
        res = bv_localize(s2(), IntegrandSpec.sympower(1))
        assert str(res) == "4*pi"
        assert str(localization_sum(s2(), IntegrandSpec.sympower(1))) == "-2"

    @pytest.mark.parametrize("k", [0, 2])
    def test_wrong_degree_vanishes(self, k):
        assert not bv_localize(s2(), IntegrandSpec.sympower(k))

    def test_euler_restriction(self):
        assert euler_restriction(s2(), "north") == RationalFn(-t)
        assert euler_restriction(flip_sign(s2(), "north"), "north") == RationalFn(t)

    def test_two_weight_euler(self):
        m = FixedPointModel(4, 2, (FixedPoint("p", Weight.real([0, 0]),
                                              (Weight.imaginary([1, 0]), Weight.imaginary([0, 1]))),))
        assert euler_restriction(m, "p") == RationalFn(MultiPoly.var(2, 0) * MultiPoly.var(2, 1))

    @pytest.mark.parametrize("tt", [0.5, 1.0, 2.0, 5.0])
    def test_dh_matches_closed_form_and_quadrature(self, tt):
        val = dh_localize(s2()).exp_eval([tt])
        assert abs(val - 4 * math.pi * math.sin(tt) / tt) < 1e-12
        quad = sphere_integral(lambda x, y, z: np.exp(1j * tt * z), QuadratureGrid(64, 64))
        assert abs(val - quad) < 1e-6

    def test_shift_keeps_volume(self):
        m = shift_model(s2(), [Fraction(1, 3)])
        assert str(bv_localize(m, IntegrandSpec.sympower(1))) == "4*pi"


def test_single_point_model():
    w = Weight.imaginary([2])
    m = FixedPointModel(2, 1, (FixedPoint("p", Weight.real([1]), (w,)),))
    expected = ExpRationalSum.exp(Weight.imaginary([1]), RationalFn.make(
        MultiPoly.constant(1, PiScalar(2 * I, 1)), [(w.scale(-I), 1)]))
    assert dh_localize(m) == expected


@pytest.mark.parametrize("name", SHIPPED)
def test_bv_expsym_is_i_power_times_dh(name):
    m = load_builtin_model(name)
    assert bv_localize(m, IntegrandSpec.expsym()) == dh_localize(m).scale(PiScalar(I ** m.half_dim))


@given(models())
def test_bv_dh_relation_on_arbitrary_data(m):
    assert bv_localize(m, IntegrandSpec.expsym()) == dh_localize(m).scale(PiScalar(I ** m.half_dim))


@given(models(), st.data())
def test_homogeneity_of_det_half(m, data):
    lam = data.draw(st.sampled_from([Fraction(-2), Fraction(1, 2), Fraction(3), Fraction(-1, 3)]))
    p = data.draw(st.sampled_from(m.points))
    scaled = scale_point_weights(m, p.id, lam)
    assert inverse_euler(scaled, scaled.point(p.id)) == inverse_euler(m, p).scale(PiScalar(lam ** -m.half_dim))


class TestPolynomiality:
    @pytest.mark.parametrize("k", range(6))
    @pytest.mark.parametrize("name", ["s2", "cp2"])
    def test_polynomial(self, name, k):
        res = polynomiality_check(localization_sum(load_builtin_model(name), IntegrandSpec.sympower(k)))
        assert isinstance(res, MultiPoly)

    def test_cp2_values(self):
        m = cp2()
        x1, x2 = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
        assert polynomiality_check(localization_sum(m, IntegrandSpec.sympower(2))) == MultiPoly.constant(2, 1)
        assert polynomiality_check(localization_sum(m, IntegrandSpec.sympower(3))) == x1 + x2

    def test_single_pole_witness(self):
        w = Weight.real([1, 2])
        res = polynomiality_check(ExpRationalSum.rational(RationalFn.inverse_linear(w)))
        assert isinstance(res, NotPolynomial) and not res
        assert res.witness == w

    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_flipped_sign_control(self, k):
        bad = flip_sign(cp2(), "p1")
        assert isinstance(polynomiality_check(localization_sum(bad, IntegrandSpec.sympower(k))), NotPolynomial)

    def test_exponentials_rejected(self):
        with pytest.raises(ValueError):
            polynomiality_check(dh_localize(s2()))


class TestModelJSON:
    def test_round_trip(self):
        for name in SHIPPED:
            m = load_builtin_model(name)
            assert model_from_dict(model_to_dict(m)) == m

    @pytest.mark.parametrize("mutate, match", [
        (lambda d: d.update(extra=1), "keys"),
        (lambda d: d.update(dim=3), "even"),
        (lambda d: d["points"][0].update(weights=[]), "isotropy weights"),
        (lambda d: d["points"][0].update(weights=[["0"]]), "zero"),
        (lambda d: d["points"][0].update(sign=2), "sign"),
        (lambda d: d["points"][0].update(mu=[0.5]), "number"),
        (lambda d: d["points"][1].update(id="north"), "duplicate"),
    ])
    def test_strict(self, mutate, match):
        d = model_to_dict(s2())
        mutate(d)
        with pytest.raises(ModelError, match=match):
            model_from_dict(d)


def test_integrand_parse():
    assert IntegrandSpec.parse("sympower:3") == IntegrandSpec.sympower(3)
    assert IntegrandSpec.parse("expsym").kind == "expsym"
    with pytest.raises(ValueError):
        IntegrandSpec.parse("sympower:-1")
    with pytest.raises(ValueError):
        IntegrandSpec.parse("cubic")


def test_custom_integrand_requires_every_point():
    spec = IntegrandSpec.custom({"north": ExpRationalSum.rational(RationalFn.constant(1, 1))})
    with pytest.raises(ModelError):
        bv_localize(s2(), spec)
