import itertools
from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from equiloc.linalg import det_bareiss, matvec, rank, solve

from strategies import small_fracs


def square(n):
    return st.lists(st.lists(small_fracs, min_size=n, max_size=n), min_size=n, max_size=n)


def leibniz(A):
    n = len(A)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1) ** inv
        for i, p in enumerate(perm):
            term *= A[i][p]
        total += term
    return total


@given(st.integers(1, 5).flatmap(square))
def test_det_matches_leibniz(A):
    assert det_bareiss(A) == leibniz(A)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), st.lists(small_fracs, min_size=n, max_size=n))))
def test_solve(data):
    A, b = data
    if not det_bareiss(A):
        return
    x = solve(A, b)
    assert list(matvec(A, x)) == b


@given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_matches_numpy(rows):
    assert rank([[Fraction(x) for x in r] for r in rows]) == np.linalg.matrix_rank(np.array(rows, dtype=float))
