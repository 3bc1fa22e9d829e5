"""Characters of compact groups: the Weyl formula, its Lie-algebra form, j^{1/2},
Fourier transforms of coadjoint orbits and the Kirillov identity.

Conventions: weights and roots are root-type (i times a real vector) so that
<lambda, X> is imaginary for real X.  A coadjoint point nu is real-type; the
orbit attached to a dominant lambda is the one through nu with i*nu = lambda + rho.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exppoly import ExpRationalSum, NonRegularDirection
from .linalg import dot
from .poly import MultiPoly, RationalFn
from .rootsys import (
    RootSystemData,
    dominant_conjugate,
    rho,
    simple_root_coordinates,
    weyl_group,
)
from .scalars import I, PiScalar, Weight

DEN_TOL = 1e-8
SNAP_TOL = 1e-6
ORACLE_DIM_CAP = 200


class CharacterError(ValueError):
    pass


@dataclass(frozen=True)
class DominantWeight:
    rs: RootSystemData
    lam: Weight

    def __post_init__(self):
        if self.lam.rank != self.rs.ambient_dim:
            raise CharacterError(f"weight has rank {self.lam.rank}, expected {self.rs.ambient_dim}")
        if not self.lam.is_root_type:
            raise CharacterError("highest weights are root-type (purely imaginary)")
        for lab in self.rs.dynkin_labels(self.lam):
            if lab < 0 or lab.denominator != 1:
                raise CharacterError(f"{self.lam} is not dominant integral (label {lab})")

    @classmethod
    def from_labels(cls, rs: RootSystemData, labels: Sequence[int]) -> "DominantWeight":
        return cls(rs, rs.weight_from_labels(labels))

    @property
    def shifted(self) -> Weight:
        """lambda + rho."""
        return self.lam + rho(self.rs)

    def labels(self) -> list[int]:
        return [int(x) for x in self.rs.dynkin_labels(self.lam)]


def _root_denominator(rs: RootSystemData) -> list[tuple[Weight, int]]:
    return [(a, 1) for a in rs.positive_roots]


def weyl_numerator(d: DominantWeight) -> ExpRationalSum:
    """sum_w eps(w) exp(<w(lambda + rho), X>)."""
    lr = d.shifted
    rank = d.rs.ambient_dim
    terms = [(w.act(lr), RationalFn.constant(rank, w.epsilon)) for w in weyl_group(d.rs)]
    return ExpRationalSum(rank, terms)


def lie_algebra_character(d: DominantWeight) -> ExpRationalSum:
    """sum_w eps(w) exp(<w(lambda + rho), X>) / prod_{alpha > 0} <alpha, X>."""
    den = RationalFn.make(MultiPoly.constant(d.rs.ambient_dim, 1), _root_denominator(d.rs))
    return weyl_numerator(d) * den


def j_half(rs: RootSystemData) -> ExpRationalSum:
    """prod_{alpha > 0} (e^{alpha/2} - e^{-alpha/2}) / <alpha, X>."""
    n = rs.ambient_dim
    out = ExpRationalSum.rational(RationalFn.constant(n, 1))
    for a in rs.positive_roots:
        half = a.scale(Fraction(1, 2))
        factor = ExpRationalSum.exp(half) - ExpRationalSum.exp(-half)
        out = out * factor * RationalFn.inverse_linear(a)
    return out


# numeric evaluation --------------------------------------------------------

def _series_exp(a: complex, order: int) -> list[complex]:
    out = [1 + 0j]
    for k in range(1, order + 1):
        out.append(out[-1] * a / k)
    return out


def _series_mul(x: list[complex], y: list[complex], order: int) -> list[complex]:
    out = [0j] * (order + 1)
    for i, a in enumerate(x[: order + 1]):
        if a:
            for j, b in enumerate(y[: order + 1 - i]):
                out[i + j] += a * b
    return out


def _fallback_direction(rs: RootSystemData, X: Sequence[float], direction) -> tuple[Fraction, ...]:
    if direction is not None:
        v = tuple(Fraction(x) for x in direction)
        if not rs.is_regular_direction(v):
            raise NonRegularDirection(f"direction {list(direction)} is orthogonal to a root")
        return v
    v = tuple(Fraction(x) for x in X)
    if any(v) and rs.is_regular_direction(v):
        return v
    return rs.rho_direction()


def weyl_character_eval(d: DominantWeight, X: Sequence[float], direction=None) -> complex:
    """Tr pi_lambda(exp X) from the Weyl quotient.

    Where the Weyl denominator is below 1e-8 the quotient is replaced by its
    limit along a regular direction: exact ``series_limit`` at X = 0, otherwise
    a Laurent expansion at X (factors within 1e-6 of zero are treated as zero).
    """
    rs = d.rs
    Xc = [complex(x) for x in X]
    if len(Xc) != rs.ambient_dim:
        raise CharacterError(f"X has length {len(Xc)}, expected {rs.ambient_dim}")
    lr = d.shifted
    group = weyl_group(rs)
    images = [(w.epsilon, w.act(lr)) for w in group]
    num = sum(eps * cmath.exp(mu.pair_numeric(Xc)) for eps, mu in images)
    den = 1 + 0j
    for a in rs.positive_roots:
        t = a.pair_numeric(Xc) / 2
        den *= cmath.exp(t) - cmath.exp(-t)
    if abs(den) >= DEN_TOL:
        return num / den
    v = _fallback_direction(rs, X, direction)
    if all(x == 0 for x in X):
        return complex(weyl_dimension(d, v))
    vc = [complex(x) for x in v]
    # Laurent expansion of num(X + eps v) / den(X + eps v)
    order = len(rs.positive_roots)
    den_s = [1 + 0j] + [0j] * order
    vanishing = 0
    for a in rs.positive_roots:
        ax, av = a.pair_numeric(Xc) / 2, a.pair_numeric(vc) / 2
        plus = [cmath.exp(ax) * c for c in _series_exp(av, order)]
        minus = [cmath.exp(-ax) * c for c in _series_exp(-av, order)]
        f = [p - m for p, m in zip(plus, minus)]
        if abs(f[0]) < SNAP_TOL:
            f[0] = 0j
            vanishing += 1
        den_s = _series_mul(den_s, f, order)
    num_s = [0j] * (order + 1)
    for eps, mu in images:
        e = cmath.exp(mu.pair_numeric(Xc))
        for k, c in enumerate(_series_exp(mu.pair_numeric(vc), order)):
            num_s[k] += eps * e * c
    return num_s[vanishing] / den_s[vanishing]


def weyl_dimension(d: DominantWeight, direction=None) -> int:
    """dim V_lambda as the eps^0 coefficient of the Lie-algebra character along a
    regular direction, divided by j^{1/2}(0) = 1."""
    v = direction if direction is not None else d.rs.rho_direction()
    top = lie_algebra_character(d).series_limit(v, 0)[0]
    jz = j_half(d.rs).series_limit(v, 0)[0]
    val = top / jz
    if val.pi_exp or not val.coeff.is_real or val.coeff.re.denominator != 1:
        raise CharacterError(f"non-integral dimension limit {val}")
    return int(val.coeff.re)


def weyl_dimension_formula(d: DominantWeight) -> Fraction:
    """prod_{alpha > 0} (lambda + rho, alpha) / (rho, alpha)."""
    lr = d.shifted.imag_part()
    r = rho(d.rs).imag_part()
    out = Fraction(1)
    for a in d.rs.positive_vectors:
        out *= dot(lr, a) / dot(r, a)
    return out


# coadjoint orbits ----------------------------------------------------------

def positive_system_of(rs: RootSystemData, nu: Weight) -> list[Weight]:
    """Roots alpha with <nu, i H_alpha> > 0.

    For alpha = i a, H_alpha = -2i a / (a, a), so <nu, i H_alpha> = 2 (nu, a) / (a, a).
    """
    if not nu.is_real_type:
        raise CharacterError("coadjoint points are real-type weights")
    c = nu.real_part()
    out = []
    for alpha in rs.roots:
        a = alpha.imag_part()
        if 2 * dot(c, a) / dot(a, a) > 0:
            out.append(alpha)
    return out


def is_regular_point(rs: RootSystemData, nu: Weight) -> bool:
    c = nu.real_part()
    return all(dot(c, a) != 0 for a in rs.positive_vectors)


def orbit_fourier(rs: RootSystemData, nu: Weight, variant: str = "theorem") -> ExpRationalSum:
    """Fourier transform of the coadjoint orbit through nu, restricted to the torus.

    ``theorem``: (2 pi)^{n/2} sum_{w in W/W_nu} e^{i<w nu, X>} / prod_{alpha in Phi+_nu} <w alpha, X>.
    ``corollary`` (regular nu): (2 pi)^{n/2} sum_w eps(w) e^{i<w nu, X>} / prod_{alpha in Phi+_nu} <alpha, X>.
    """
    if nu.rank != rs.ambient_dim:
        raise CharacterError(f"nu has rank {nu.rank}, expected {rs.ambient_dim}")
    phi = positive_system_of(rs, nu)
    half = len(phi)
    pref = PiScalar(2**half, half)
    n = rs.ambient_dim
    one = MultiPoly.constant(n, 1)
    terms = []
    if variant == "theorem":
        seen = set()
        for w in weyl_group(rs):
            wnu = w.act(nu)
            if wnu in seen:
                continue
            seen.add(wnu)
            den = RationalFn.make(one, [(w.act(a), 1) for a in phi])
            terms.append((wnu.scale(I), den))
    elif variant == "corollary":
        if not is_regular_point(rs, nu):
            raise CharacterError(f"{nu} is not regular; the corollary form does not apply")
        den = RationalFn.make(one, [(a, 1) for a in phi])
        for w in weyl_group(rs):
            terms.append((w.act(nu).scale(I), den.scale(w.epsilon)))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return ExpRationalSum(n, terms).scale(pref)


def kirillov_point(d: DominantWeight) -> Weight:
    """The real-type nu with i*nu = lambda + rho."""
    return d.shifted.scale(-I)


@dataclass(frozen=True)
class KirillovReport:
    equal: bool
    lhs: str
    rhs: str
    nu: str
    orbit_dim: int
    corollary_agrees: bool
    positive_system_matches: bool

    def as_dict(self) -> dict:
        return {
            "equal": self.equal,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "nu": self.nu,
            "orbit_dim": self.orbit_dim,
            "corollary_agrees": self.corollary_agrees,
            "positive_system_matches": self.positive_system_matches,
        }


def kirillov_sides(d: DominantWeight) -> tuple[ExpRationalSum, ExpRationalSum]:
    """(Lie-algebra character, (2 pi)^{-n/2} * orbit Fourier transform)."""
    nu = kirillov_point(d)
    half = len(positive_system_of(d.rs, nu))
    rhs = orbit_fourier(d.rs, nu, "theorem").scale(PiScalar(Fraction(1, 2**half), -half))
    return lie_algebra_character(d), rhs


def kirillov_identity_check(d: DominantWeight) -> KirillovReport:
    lhs, rhs = kirillov_sides(d)
    nu = kirillov_point(d)
    phi = positive_system_of(d.rs, nu)
    half = len(phi)
    cor = orbit_fourier(d.rs, nu, "corollary").scale(PiScalar(Fraction(1, 2**half), -half))
    return KirillovReport(
        equal=lhs == rhs,
        lhs=str(lhs),
        rhs=str(rhs),
        nu=str(nu),
        orbit_dim=2 * half,
        corollary_agrees=cor == rhs,
        positive_system_matches=set(phi) == set(d.rs.positive_roots),
    )


# Freudenthal oracle -------------------------------------------------------

def weight_multiplicities(d: DominantWeight, cap: int = ORACLE_DIM_CAP) -> dict[tuple[Fraction, ...], int]:
    """All weights of V_lambda (as real vectors) with multiplicities, by Freudenthal's recursion."""
    rs = d.rs
    dim = weyl_dimension_formula(d)
    if dim > cap:
        raise CharacterError(f"dim V_lambda = {dim} exceeds the oracle cap {cap}")
    lam = d.lam.imag_part()
    r = rho(rs).imag_part()
    simple = rs.simple_vectors
    positive = rs.positive_vectors

    def is_weight(v) -> bool:
        dom = dominant_conjugate(rs, v)
        diff = tuple(a - b for a, b in zip(lam, dom))
        coords = simple_root_coordinates(rs, diff)
        return all(c >= 0 and c.denominator == 1 for c in coords)

    levels: dict[tuple, int] = {lam: 0}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in simple:
                nu = tuple(x - y for x, y in zip(mu, a))
                if nu not in levels and is_weight(nu):
                    levels[nu] = levels[mu] + 1
                    nxt.append(nu)
        frontier = nxt

    lr = tuple(x + y for x, y in zip(lam, r))
    norm_lr = dot(lr, lr)
    mult: dict[tuple, int] = {lam: 1}
    for mu in sorted(levels, key=lambda v: levels[v]):
        if mu == lam:
            continue
        acc = Fraction(0)
        for a in positive:
            k = 1
            while True:
                up = tuple(x + k * y for x, y in zip(mu, a))
                if up not in mult:
                    break
                acc += mult[up] * dot(up, a)
                k += 1
        mr = tuple(x + y for x, y in zip(mu, r))
        m = 2 * acc / (norm_lr - dot(mr, mr))
        if m.denominator != 1:
            raise CharacterError(f"non-integral multiplicity {m} at {mu}")
        mult[mu] = int(m)
    return {mu: m for mu, m in mult.items() if m}


def character_oracle(d: DominantWeight, X: Sequence[float]) -> complex:
    """sum over weights mu of mult(mu) * exp(i (mu, X))."""
    return sum(m * cmath.exp(1j * sum(float(c) * x for c, x in zip(mu, X)))
               for mu, m in weight_multiplicities(d).items())


def random_regular_point(rs: RootSystemData, rng, scale: float = 1.0, margin: float = 1e-3) -> list[float]:
    """Random real X (trace zero for type A) with every root pairing and every
    Weyl-denominator factor bounded away from zero."""
    n = rs.ambient_dim
    while True:
        X = [rng.uniform(-scale, scale) for _ in range(n)]
        if rs.family == "A":
            mean = sum(X) / n
            X = [x - mean for x in X]
        ok = True
        for a in rs.positive_vectors:
            t = sum(float(c) * x for c, x in zip(a, X))
            if abs(t) < margin or abs(math.sin(t / 2)) < margin:
                ok = False
                break
        if ok:
            return X
