import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from equiloc.linalg import det_bareiss
from equiloc.pfaffian import AntisymMatrix, NotAntisymmetric, pfaffian, pfaffian_berezin
from equiloc.scalars import GaussRat

from strategies import small_fracs


@st.composite
def antisym(draw, sizes=(2, 4, 6, 8)):
    n = draw(st.sampled_from(sizes))
    A = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = draw(small_fracs)
            A[i][j], A[j][i] = v, -v
    return A


def block(c1, c2):
    return [[0, -c1, 0, 0], [c1, 0, 0, 0], [0, 0, 0, -c2], [0, 0, c2, 0]]


@pytest.mark.parametrize("f", [pfaffian, pfaffian_berezin])
def test_two_by_two_convention(f):
    assert f([[0, -3], [3, 0]]) == GaussRat(3)
    assert f([[0, -5], [5, 0]]) == GaussRat(5)


@pytest.mark.parametrize("f", [pfaffian, pfaffian_berezin])
def test_block_product(f):
    assert f(block(2, 3)) == GaussRat(6)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_zero_matrix(n):
    Z = [[0] * n for _ in range(n)]
    assert not pfaffian(Z) and not pfaffian_berezin(Z)


def test_odd_is_zero():
    assert not pfaffian([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]])


def test_rejects_non_antisymmetric():
    with pytest.raises(NotAntisymmetric):
        AntisymMatrix([[0, 1], [1, 0]])
    with pytest.raises(NotAntisymmetric):
        AntisymMatrix([[1, 0], [0, 0]])


def test_caps():
    with pytest.raises(ValueError):
        pfaffian([[0] * 14 for _ in range(14)])
    with pytest.raises(ValueError):
        pfaffian_berezin([[0] * 12 for _ in range(12)])


@given(antisym(sizes=(2, 4, 6, 8, 10)))
def test_square_is_determinant(A):
    pf = pfaffian(A)
    assert pf * pf == det_bareiss(A)


@given(antisym())
def test_two_routes_agree(A):
    assert pfaffian(A) == pfaffian_berezin(A)


@given(antisym(), st.data())
def test_swap_flips_sign(A, data):
    n = len(A)
    i, j = data.draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
    perm = list(range(n))
    perm[i], perm[j] = perm[j], perm[i]
    assert pfaffian(AntisymMatrix(A).permuted(perm)) == -pfaffian(A)


def test_gaussian_entries():
    rng = random.Random(3)
    n = 4
    A = [[GaussRat(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = GaussRat(rng.randint(-3, 3), rng.randint(-3, 3))
            A[i][j], A[j][i] = v, -v
    pf = pfaffian(A)
    assert pf * pf == AntisymMatrix(A).det()
    assert pf == pfaffian_berezin(A)
