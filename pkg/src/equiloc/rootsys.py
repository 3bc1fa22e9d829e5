"""Root systems of classical type, their Weyl groups, rho and Weyl orbits.

Roots are stored as root-type ``Weight`` objects, i.e. i times the usual real
vectors in the standard ambient realisation.  All combinatorics happens on the
real vectors; the factor i only matters when pairing with the torus.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import det_bareiss, dot, matmul, matvec, solve
from .scalars import GaussRat, Weight

WEYL_GROUP_CAP = 10**6

Vec = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


class RootSystemError(ValueError):
    pass


def _vec(n: int, *pairs) -> Vec:
    v = [Fraction(0)] * n
    for j, c in pairs:
        v[j] += c
    return tuple(v)


@dataclass(frozen=True)
class RootSystemData:
    family: str
    rank: int
    ambient_dim: int
    positive_roots: tuple[Weight, ...]
    simple_roots: tuple[Weight, ...]

    @property
    def positive_vectors(self) -> list[Vec]:
        return [r.imag_part() for r in self.positive_roots]

    @property
    def simple_vectors(self) -> list[Vec]:
        return [r.imag_part() for r in self.simple_roots]

    @property
    def roots(self) -> list[Weight]:
        return list(self.positive_roots) + [-r for r in self.positive_roots]

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def coroot(self, a: Vec) -> Vec:
        n = dot(a, a)
        return tuple(2 * x / n for x in a)

    def fundamental_weights(self) -> list[Weight]:
        """omega_i in the real span of the roots with (omega_i, alpha_j^vee) = delta_ij."""
        simple = self.simple_vectors
        gram = [[dot(a, self.coroot(b)) for a in simple] for b in simple]
        out = []
        for i in range(self.rank):
            rhs = [Fraction(int(i == j)) for j in range(self.rank)]
            c = solve(gram, rhs)
            vec = [sum((c[k] * simple[k][d] for k in range(self.rank)), Fraction(0))
                   for d in range(self.ambient_dim)]
            out.append(Weight.imaginary(vec))
        return out

    def weight_from_labels(self, labels: Sequence[int]) -> Weight:
        """Root-type weight with the given Dynkin labels."""
        if len(labels) != self.rank:
            raise RootSystemError(f"{self.name} needs {self.rank} Dynkin labels, got {len(labels)}")
        acc = [Fraction(0)] * self.ambient_dim
        for lab, w in zip(labels, self.fundamental_weights()):
            for d, c in enumerate(w.imag_part()):
                acc[d] += lab * c
        return Weight.imaginary(acc)

    def dynkin_labels(self, lam: Weight) -> list[Fraction]:
        c = lam.imag_part()
        return [dot(c, self.coroot(a)) for a in self.simple_vectors]

    def is_regular_direction(self, X: Sequence) -> bool:
        """No root pairs to zero with the real vector X."""
        return all(dot(a, X) != 0 for a in self.positive_vectors)

    def rho_direction(self) -> Vec:
        """Real vector of rho; regular for every root."""
        return rho(self).imag_part()


def build_root_system(family: str, rank: int) -> RootSystemData:
    family = family.upper()
    if family not in "ABCD" or len(family) != 1:
        raise RootSystemError(f"unsupported family {family!r}")
    low = {"A": 1, "B": 2, "C": 2, "D": 3}[family]
    if not low <= rank <= 8:
        raise RootSystemError(f"{family}{rank} outside supported ranks {low}..8")
    r = rank
    pos: list[Vec] = []
    simple: list[Vec] = []
    if family == "A":
        n = r + 1
        pos = [_vec(n, (j, 1), (k, -1)) for j in range(n) for k in range(j + 1, n)]
        simple = [_vec(n, (j, 1), (j + 1, -1)) for j in range(r)]
    else:
        n = r
        pos = [_vec(n, (j, 1), (k, -1)) for j in range(n) for k in range(j + 1, n)]
        pos += [_vec(n, (j, 1), (k, 1)) for j in range(n) for k in range(j + 1, n)]
        simple = [_vec(n, (j, 1), (j + 1, -1)) for j in range(r - 1)]
        if family == "B":
            pos += [_vec(n, (j, 1)) for j in range(n)]
            simple.append(_vec(n, (n - 1, 1)))
        elif family == "C":
            pos += [_vec(n, (j, 2)) for j in range(n)]
            simple.append(_vec(n, (n - 1, 2)))
        else:
            simple.append(_vec(n, (n - 2, 1), (n - 1, 1)))
    return RootSystemData(
        family=family,
        rank=r,
        ambient_dim=n,
        positive_roots=tuple(Weight.imaginary(v) for v in pos),
        simple_roots=tuple(Weight.imaginary(v) for v in simple),
    )


@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix
    epsilon: int

    def act_vec(self, v: Sequence[Fraction]) -> Vec:
        return matvec(self.matrix, v)

    def act(self, w: Weight) -> Weight:
        re = matvec(self.matrix, w.real_part())
        im = matvec(self.matrix, w.imag_part())
        return Weight(GaussRat(a, b) for a, b in zip(re, im))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(matmul(self.matrix, other.matrix), self.epsilon * other.epsilon)

    def determinant(self) -> Fraction:
        return det_bareiss([list(r) for r in self.matrix])

    def inverse(self) -> "WeylElement":
        # orthogonal: inverse is transpose
        return WeylElement(tuple(zip(*self.matrix)), self.epsilon)


def reflection_matrix(a: Sequence[Fraction]) -> Matrix:
    n = len(a)
    aa = dot(a, a)
    return tuple(
        tuple(Fraction(int(i == j)) - 2 * a[i] * a[j] / aa for j in range(n))
        for i in range(n)
    )


def weyl_group_order(family: str, rank: int) -> int:
    r = rank
    return {
        "A": math.factorial(r + 1),
        "B": 2**r * math.factorial(r),
        "C": 2**r * math.factorial(r),
        "D": 2 ** (r - 1) * math.factorial(r),
    }[family.upper()]


_GROUP_CACHE: dict[tuple[str, int], tuple[WeylElement, ...]] = {}


def weyl_group(rs: RootSystemData, cap: int = WEYL_GROUP_CAP) -> list[WeylElement]:
    """All Weyl group elements, identity first, by BFS over simple reflections."""
    key = (rs.family, rs.rank)
    if key in _GROUP_CACHE:
        return list(_GROUP_CACHE[key])
    if weyl_group_order(rs.family, rs.rank) > cap:
        raise RootSystemError(f"|W({rs.name})| exceeds the cap {cap}")
    n = rs.ambient_dim
    ident = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    gens = [reflection_matrix(a) for a in rs.simple_vectors]
    seen = {ident: 1}
    order = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = matmul(s, g)
            if h not in seen:
                seen[h] = -seen[g]
                order.append(h)
                queue.append(h)
                if len(order) > cap:
                    raise RootSystemError(f"|W({rs.name})| exceeds the cap {cap}")
    group = tuple(WeylElement(m, seen[m]) for m in order)
    _GROUP_CACHE[key] = group
    return list(group)


def rho(rs: RootSystemData) -> Weight:
    acc = [Fraction(0)] * rs.ambient_dim
    for a in rs.positive_vectors:
        for d, c in enumerate(a):
            acc[d] += c
    return Weight.imaginary([c / 2 for c in acc])


def weyl_orbit(rs: RootSystemData, lam: Weight) -> tuple[list[Weight], int]:
    """Distinct images w(lam) in group order, and |stabilizer| = |W| / |orbit|."""
    if lam.rank != rs.ambient_dim:
        raise RootSystemError(f"weight of rank {lam.rank} for ambient dimension {rs.ambient_dim}")
    group = weyl_group(rs)
    seen: dict[Weight, None] = {}
    for w in group:
        seen.setdefault(w.act(lam), None)
    orbit = list(seen)
    return orbit, len(group) // len(orbit)


def dominant_conjugate(rs: RootSystemData, v: Sequence[Fraction]) -> Vec:
    """Reflect v by simple roots until it pairs nonnegatively with all of them."""
    v = tuple(v)
    simple = rs.simple_vectors
    changed = True
    while changed:
        changed = False
        for a in simple:
            p = dot(v, a)
            if p < 0:
                c = 2 * p / dot(a, a)
                v = tuple(x - c * y for x, y in zip(v, a))
                changed = True
    return v


def simple_root_coordinates(rs: RootSystemData, v: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients of v (assumed in the root span) on the simple roots."""
    simple = rs.simple_vectors
    gram = [[dot(a, b) for b in simple] for a in simple]
    return solve(gram, [dot(a, v) for a in simple])
