"""Exact Pfaffians of antisymmetric matrices over Q(i).

Two independent routes: expansion along the first row, and the top
coefficient of exp(alpha) in an exterior algebra (the Berezin integral).

Convention: the 2-form attached to A is alpha = sum_{i<j} <A e_i, e_j> e_i ^ e_j,
whose coefficients are the entries a[j][i] below the diagonal. Hence
Pf([[0, -c], [c, 0]]) = c.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

from .linalg import det_bareiss
from .scalars import GaussRat

MAX_EXPANSION = 12
MAX_BEREZIN = 10


class NotAntisymmetric(ValueError):
    pass


class AntisymMatrix:
    """Square matrix of Gaussian rationals with A^T = -A (checked)."""

    __slots__ = ("n", "entries")

    def __init__(self, rows: Sequence[Sequence]):
        entries = tuple(tuple(GaussRat.coerce(x) for x in row) for row in rows)
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise NotAntisymmetric("matrix is not square")
        for i in range(n):
            if entries[i][i]:
                raise NotAntisymmetric(f"nonzero diagonal entry at {i}")
            for j in range(i + 1, n):
                if entries[i][j] != -entries[j][i]:
                    raise NotAntisymmetric(f"a[{i}][{j}] != -a[{j}][{i}]")
        self.n = n
        self.entries = entries

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def permuted(self, perm: Sequence[int]) -> "AntisymMatrix":
        """P A P^T for the permutation sending row k to row perm[k]."""
        return AntisymMatrix([[self.entries[perm[i]][perm[j]] for j in range(self.n)]
                              for i in range(self.n)])

    def det(self) -> GaussRat:
        return GaussRat.coerce(det_bareiss([list(r) for r in self.entries]))

    def rows(self) -> list[list[GaussRat]]:
        return [list(r) for r in self.entries]


def _as_matrix(A) -> AntisymMatrix:
    return A if isinstance(A, AntisymMatrix) else AntisymMatrix(A)


def pfaffian(A) -> GaussRat:
    """Pf(A) by recursive expansion along the first row (memoised on index sets).

    >>> pfaffian([[0, -3], [3, 0]])
    GaussRat(3, 0)
    """
    A = _as_matrix(A)
    if A.n > MAX_EXPANSION:
        raise ValueError(f"pfaffian expansion capped at n = {MAX_EXPANSION}")
    if A.n % 2:
        return GaussRat(0)
    a = tuple(zip(*A.entries))  # a[i][j] = <A e_i, e_j>

    @lru_cache(maxsize=None)
    def pf(idx: tuple[int, ...]) -> GaussRat:
        if not idx:
            return GaussRat(1)
        i = idx[0]
        total = GaussRat(0)
        for pos in range(1, len(idx)):
            j = idx[pos]
            if not a[i][j]:
                continue
            rest = idx[1:pos] + idx[pos + 1:]
            term = a[i][j] * pf(rest)
            total = total + term if pos % 2 == 1 else total - term
        return total

    return pf(tuple(range(A.n)))


def _wedge(x: dict[int, GaussRat], y: dict[int, GaussRat]) -> dict[int, GaussRat]:
    """Product in the exterior algebra; basis monomials are bitmasks of generators."""
    out: dict[int, GaussRat] = {}
    for mx, cx in x.items():
        for my, cy in y.items():
            if mx & my:
                continue
            # sign of merging the sorted generator lists
            swaps = 0
            m = my
            while m:
                low = m & -m
                swaps += bin(mx & ~(low - 1) & ~low).count("1")
                m ^= low
            c = cx * cy
            key = mx | my
            out[key] = out.get(key, GaussRat(0)) + (-c if swaps % 2 else c)
    return {k: v for k, v in out.items() if v}


def pfaffian_berezin(A) -> GaussRat:
    """Top coefficient of alpha^(n/2) / (n/2)! with alpha = sum_{i<j} a_ij e_i ^ e_j."""
    A = _as_matrix(A)
    n = A.n
    if n > MAX_BEREZIN:
        raise ValueError(f"exterior algebra route capped at n = {MAX_BEREZIN}")
    if n % 2:
        return GaussRat(0)
    alpha = {}
    for i in range(n):
        for j in range(i + 1, n):
            if A.entries[j][i]:
                alpha[(1 << i) | (1 << j)] = A.entries[j][i]
    power = {0: GaussRat(1)}
    for _ in range(n // 2):
        power = _wedge(power, alpha)
    top = power.get((1 << n) - 1, GaussRat(0))
    return top / math.factorial(n // 2)
