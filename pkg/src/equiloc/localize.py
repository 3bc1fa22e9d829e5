"""Fixed-point localization: Berline-Vergne and Duistermaat-Heckman sums.

A model only records what the fixed-point formulas consume: at every isolated
fixed point the moment value mu(p), the isotropy weights (root-type, i.e.
i times a real vector) and an orientation sign.  At such a point

    det^{1/2} L(X, p) = sign * prod_j <w_j, X> / i,

a real linear form product in X.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence, Union

from .exppoly import ExpRationalSum
from .poly import MultiPoly, RationalFn
from .scalars import GaussRat, I, PiScalar, Weight, render_weight, to_fraction


class ModelError(ValueError):
    """Malformed fixed-point data."""


@dataclass(frozen=True)
class FixedPoint:
    id: str
    mu: Weight
    weights: tuple[Weight, ...]
    sign: int = 1


@dataclass(frozen=True)
class FixedPointModel:
    dim: int
    rank: int
    points: tuple[FixedPoint, ...]

    def __post_init__(self):
        if self.dim % 2 or self.dim < 0:
            raise ModelError(f"manifold dimension must be even, got {self.dim}")
        ids = set()
        for p in self.points:
            if p.id in ids:
                raise ModelError(f"duplicate fixed point id {p.id!r}")
            ids.add(p.id)
            if p.sign not in (1, -1):
                raise ModelError(f"sign of {p.id!r} must be +1 or -1")
            if p.mu.rank != self.rank or not p.mu.is_real_type:
                raise ModelError(f"moment value of {p.id!r} must be a real vector of length {self.rank}")
            if len(p.weights) != self.dim // 2:
                raise ModelError(f"{p.id!r} needs {self.dim // 2} isotropy weights, got {len(p.weights)}")
            for w in p.weights:
                if w.rank != self.rank:
                    raise ModelError(f"weight of {p.id!r} has rank {w.rank}, expected {self.rank}")
                if not w:
                    raise ModelError(f"zero isotropy weight at {p.id!r}")
                if not w.is_root_type:
                    raise ModelError(f"isotropy weights must be root-type (imaginary), at {p.id!r}")

    @property
    def half_dim(self) -> int:
        return self.dim // 2

    def point(self, point_id: str) -> FixedPoint:
        for p in self.points:
            if p.id == point_id:
                return p
        raise KeyError(f"no fixed point {point_id!r}")

    def with_points(self, points: Sequence[FixedPoint]) -> "FixedPointModel":
        return FixedPointModel(self.dim, self.rank, tuple(points))


@dataclass(frozen=True)
class IntegrandSpec:
    """What is integrated: a power of the equivariant symplectic form mu + omega,
    exp(i(mu + omega)), or explicit per-point restrictions."""

    kind: str  # "sympower" | "expsym" | "custom"
    k: int = 0
    restrictions: Mapping[str, ExpRationalSum] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("sympower", "expsym", "custom"):
            raise ValueError(f"unknown integrand kind {self.kind!r}")
        if self.kind == "sympower" and self.k < 0:
            raise ValueError("symplectic power must be nonnegative")

    @classmethod
    def sympower(cls, k: int) -> "IntegrandSpec":
        return cls("sympower", k)

    @classmethod
    def expsym(cls) -> "IntegrandSpec":
        return cls("expsym")

    @classmethod
    def custom(cls, restrictions: Mapping[str, ExpRationalSum]) -> "IntegrandSpec":
        return cls("custom", restrictions=dict(restrictions))

    @classmethod
    def parse(cls, text: str) -> "IntegrandSpec":
        """"sympower:K" or "expsym"."""
        text = text.strip().lower()
        if text == "expsym":
            return cls.expsym()
        if text.startswith("sympower:"):
            return cls.sympower(int(text.split(":", 1)[1]))
        raise ValueError(f"cannot parse integrand {text!r}")


def euler_restriction(m: FixedPointModel, point_id: str) -> RationalFn:
    """sign * prod_j <w_j, X>/i at the point, as a (polynomial) RationalFn."""
    p = m.point(point_id)
    poly = MultiPoly.constant(m.rank, p.sign)
    for w in p.weights:
        poly = poly * MultiPoly.linear(w.scale(-I))
    return RationalFn(poly)


def inverse_euler(m: FixedPointModel, p: FixedPoint) -> RationalFn:
    """1 / det^{1/2} L(X, p), kept factored."""
    den_scalar = PiScalar(GaussRat(p.sign) * (-I) ** m.half_dim)
    return RationalFn.make(MultiPoly.constant(m.rank, 1), [(w, 1) for w in p.weights], den_scalar)


def _restriction(m: FixedPointModel, p: FixedPoint, f: IntegrandSpec) -> ExpRationalSum:
    if f.kind == "sympower":
        mu_x = MultiPoly.linear(p.mu)
        return ExpRationalSum.rational(RationalFn(mu_x ** f.k))
    if f.kind == "expsym":
        return ExpRationalSum.exp(p.mu.scale(I))
    if p.id not in f.restrictions:
        raise ModelError(f"custom integrand has no restriction at {p.id!r}")
    return f.restrictions[p.id]


def localization_sum(m: FixedPointModel, f: IntegrandSpec) -> ExpRationalSum:
    """sum_p restriction_p(X) / det^{1/2} L(X, p), without any 2*pi prefactor."""
    total = ExpRationalSum.zero(m.rank)
    for p in m.points:
        total = total + _restriction(m, p, f) * inverse_euler(m, p)
    return total


def bv_prefactor(m: FixedPointModel) -> PiScalar:
    return PiScalar(GaussRat(-2) ** m.half_dim, m.half_dim)


def dh_prefactor(m: FixedPointModel) -> PiScalar:
    return PiScalar((GaussRat(2) * I) ** m.half_dim, m.half_dim)


def bv_localize(m: FixedPointModel, f: IntegrandSpec) -> ExpRationalSum:
    """(-2 pi)^{n/2} sum_p restriction_p / det^{1/2} L(X, p)."""
    return localization_sum(m, f).scale(bv_prefactor(m))


def dh_localize(m: FixedPointModel) -> ExpRationalSum:
    """(2 pi i)^{n/2} sum_p exp(i mu_p(X)) / det^{1/2} L(X, p)."""
    return localization_sum(m, IntegrandSpec.expsym()).scale(dh_prefactor(m))


@dataclass(frozen=True)
class NotPolynomial:
    witness: Weight
    remainder: RationalFn

    def __bool__(self):
        return False


def polynomiality_check(s: ExpRationalSum) -> Union[MultiPoly, NotPolynomial]:
    """The polynomial equal to a pure rational sum, or a denominator factor that survives.

    Summation already brings terms to a common factored denominator and cancels
    every linear factor dividing the numerator, so whatever factor remains is a
    genuine pole.
    """
    if not s.is_rational:
        raise ValueError("polynomiality check needs a sum without exponentials")
    r = s.as_rational().normalize()
    if r.den_factors:
        return NotPolynomial(r.den_factors[0][0], r)
    return r.num


# JSON ---------------------------------------------------------------------

_MODEL_KEYS = {"dim", "rank", "points"}
_POINT_KEYS = {"id", "mu", "weights", "sign"}


def model_from_dict(data: Mapping) -> FixedPointModel:
    """Strict reader for {"dim", "rank", "points": [{"id", "mu", "weights", "sign"}]}."""
    if not isinstance(data, Mapping):
        raise ModelError("model must be a JSON object")
    extra = set(data) - _MODEL_KEYS
    if extra or not {"dim", "rank", "points"} <= set(data):
        raise ModelError(f"model keys must be {sorted(_MODEL_KEYS)}, got {sorted(data)}")
    points = []
    for raw in data["points"]:
        extra = set(raw) - _POINT_KEYS
        if extra or not {"id", "mu", "weights"} <= set(raw):
            raise ModelError(f"bad fixed point keys {sorted(raw)}")
        try:
            mu = Weight.real([to_fraction(x) for x in raw["mu"]])
            weights = tuple(Weight.imaginary([to_fraction(x) for x in w]) for w in raw["weights"])
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ModelError(f"bad number in point {raw.get('id')!r}: {exc}") from exc
        points.append(FixedPoint(str(raw["id"]), mu, weights, int(raw.get("sign", 1))))
    return FixedPointModel(int(data["dim"]), int(data["rank"]), tuple(points))


def model_to_dict(m: FixedPointModel) -> dict:
    return {
        "dim": m.dim,
        "rank": m.rank,
        "points": [
            {
                "id": p.id,
                "mu": [str(c) for c in p.mu.real_part()],
                "weights": [[str(c) for c in w.imag_part()] for w in p.weights],
                "sign": p.sign,
            }
            for p in m.points
        ],
    }


def load_model(path: str | Path) -> FixedPointModel:
    with open(path) as fh:
        return model_from_dict(json.load(fh))


def describe_point(p: FixedPoint) -> str:
    ws = ", ".join(render_weight(w) for w in p.weights)
    return f"{p.id}: mu={render_weight(p.mu)} weights=({ws}) sign={p.sign:+d}"


# model transformations used by the property checks ------------------------

def scale_point_weights(m: FixedPointModel, point_id: str, factor) -> FixedPointModel:
    factor = to_fraction(factor)
    pts = []
    for p in m.points:
        if p.id == point_id:
            p = FixedPoint(p.id, p.mu, tuple(w.scale(factor) for w in p.weights), p.sign)
        pts.append(p)
    return m.with_points(pts)


def shift_model(m: FixedPointModel, c: Sequence) -> FixedPointModel:
    """Same data with moment map mu - c."""
    shift = Weight.real([to_fraction(x) for x in c])
    return m.with_points([FixedPoint(p.id, p.mu - shift, p.weights, p.sign) for p in m.points])


def flip_sign(m: FixedPointModel, point_id: str) -> FixedPointModel:
    return m.with_points([
        FixedPoint(p.id, p.mu, p.weights, -p.sign if p.id == point_id else p.sign) for p in m.points
    ])
