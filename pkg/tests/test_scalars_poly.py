import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from equiloc.poly import (
    MultiPoly,
    NearPole,
    NotDivisible,
    RationalFn,
    divide_by_linear,
    eval_point,
    render_poly,
    render_rational,
    restrict_to_kernel,
)
from equiloc.scalars import GaussRat, I, PiMismatch, PiScalar, Weight, render_scalar

from strategies import polys, real_weights

x1 = MultiPoly.var(2, 0)
x2 = MultiPoly.var(2, 1)


class TestScalars:
    def test_gauss_field(self):
        z = GaussRat(1, 2)
        assert z * z.conjugate() == GaussRat(5)
        assert z / z == GaussRat(1)
        assert I * I == GaussRat(-1)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            GaussRat(0.5)

    def test_pi_zero_is_unique(self):
        assert PiScalar(0, 3) == PiScalar(0)
        assert PiScalar(0, 3).pi_exp == 0

    def test_pi_mismatch(self):
        with pytest.raises(PiMismatch):
            PiScalar(1, 1) + PiScalar(1, 2)

    def test_zero_absorbs_any_pi_power(self):
        assert PiScalar(0) + PiScalar(3, 2) == PiScalar(3, 2)

    @pytest.mark.parametrize("s, text", [
        (PiScalar(4, 1), "4*pi"),
        (PiScalar(-2), "-2"),
        (PiScalar(1, 2), "pi^2"),
        (PiScalar(GaussRat(0, 2), 1), "2*i*pi"),
        (PiScalar(GaussRat(1, -2), 2), "(1 - 2*i)*pi^2"),
    ])
    def test_render(self, s, text):
        assert render_scalar(s) == text

    def test_weight_types(self):
        assert Weight.imaginary([1, -1]).is_root_type
        assert Weight.real([1, 2]).is_real_type
        assert not Weight([GaussRat(1, 1)]).is_real_type


class TestPolynomials:
    def test_difference_of_squares(self):
        assert (x1 + x2) * (x1 - x2) == x1 ** 2 - x2 ** 2

    @given(polys(3))
    def test_additive_inverse(self, p):
        assert not (p + (-p))

    def test_eval(self):
        assert eval_point(x1 ** 2 - x2 ** 2, [2, 1]) == pytest.approx(3)
        pix = MultiPoly.var(1, 0).scale(PiScalar(1, 1))
        assert eval_point(pix, [1]) == pytest.approx(math.pi)

    def test_divide(self):
        w = Weight.real([1, 1])
        assert divide_by_linear(x1 ** 2 - x2 ** 2, w) == x1 - x2
        with pytest.raises(NotDivisible):
            divide_by_linear(x1, Weight.real([0, 1]))
        assert not divide_by_linear(MultiPoly.zero(2), w)

    def test_restrict(self):
        w = Weight.real([1, -1])
        assert not restrict_to_kernel(x1 - x2, w)
        assert restrict_to_kernel(x1 + x2, w) == MultiPoly.var(1, 0).scale(2)
        assert restrict_to_kernel(MultiPoly.constant(2, 1), w) == MultiPoly.constant(1, 1)

    def test_graded_lex_rendering(self):
        assert render_poly(x2 + x1 ** 2 + 3) == "x1^2 + x2 + 3"

    def test_topological_degree(self):
        assert (x1 * x2).topological_degree() == 4

    @given(st.integers(1, 3).flatmap(lambda l: st.tuples(polys(l), real_weights(l))))
    def test_divide_after_multiply(self, pw):
        p, w = pw
        assert divide_by_linear(p * MultiPoly.linear(w), w) == p

    @given(st.integers(1, 3).flatmap(lambda l: st.tuples(polys(l), real_weights(l))))
    def test_divisible_iff_restriction_vanishes(self, pw):
        p, w = pw
        try:
            divide_by_linear(p, w)
            divisible = True
        except NotDivisible:
            divisible = False
        assert divisible == (not restrict_to_kernel(p, w))


class TestRational:
    def test_cancellation(self):
        r = RationalFn.inverse_linear(Weight.real([1, 0]))
        assert not (r + (-r))

    def test_near_pole(self):
        with pytest.raises(NearPole):
            RationalFn.inverse_linear(Weight.real([1])).eval_point([0])

    def test_factor_cancels_on_construction(self):
        r = RationalFn.make(x1 ** 2 - x2 ** 2, [(Weight.real([2, 2]), 1)])
        assert r.is_polynomial
        assert r.num == (x1 - x2).scale(Fraction(1, 2))

    def test_render(self):
        r = RationalFn.make(MultiPoly.constant(2, -2), [(Weight.real([1, 0]), 1), (Weight.real([1, -1]), 1)])
        assert render_rational(r) == "-2/(x1*(x1 - x2))"

    @given(st.integers(1, 3).flatmap(
        lambda l: st.tuples(polys(l), st.lists(st.tuples(real_weights(l), st.integers(1, 2)), max_size=3))))
    def test_normalize_idempotent(self, data):
        p, factors = data
        r = RationalFn.make(p, factors, PiScalar(3, 1))
        once = r.normalize()
        twice = once.normalize()
        assert once.num == twice.num and once.den_factors == twice.den_factors

    @given(st.integers(1, 2).flatmap(lambda l: st.tuples(
        polys(l, 3), polys(l, 3), real_weights(l), real_weights(l),
        st.lists(st.floats(-2, 2), min_size=l, max_size=l))))
    def test_eval_respects_ring_ops(self, data):
        p, q, w, v, X = data
        a = RationalFn.make(p, [(w, 1)])
        b = RationalFn.make(q, [(v, 2)])
        if min(abs(w.pair_numeric(X)), abs(v.pair_numeric(X))) < 1e-2:
            return
        va, vb = a.eval_point(X), b.eval_point(X)
        scale = 1 + abs(va) + abs(vb) + abs(va * vb)
        assert abs((a + b).eval_point(X) - (va + vb)) <= 1e-10 * scale
        assert abs((a * b).eval_point(X) - va * vb) <= 1e-10 * scale
