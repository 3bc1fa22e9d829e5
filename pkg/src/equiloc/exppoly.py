"""Finite sums of exponentials with rational-function coefficients."""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .poly import EPS_DEN, MultiPoly, RationalFn, render_rational
from .scalars import GaussRat, PiScalar, Weight

MAX_SERIES_ORDER = 12


class NonRegularDirection(ValueError):
    """A denominator factor vanishes identically along the requested direction."""


class ExpRationalSum:
    """sum_j exp(<lambda_j, X>) * R_j(X), kept with distinct exponents and nonzero R_j."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Iterable[tuple[Weight, RationalFn]] | Mapping = ()):
        self.rank = rank
        acc: dict[Weight, RationalFn] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for lam, coeff in items:
            if lam.rank != rank or coeff.nvars != rank:
                raise ValueError(f"rank mismatch in exponential sum of rank {rank}")
            acc[lam] = acc[lam] + coeff if lam in acc else coeff.normalize()
        self.terms = {lam: c for lam, c in acc.items() if c}

    @classmethod
    def zero(cls, rank: int) -> "ExpRationalSum":
        return cls(rank)

    @classmethod
    def exp(cls, lam: Weight, coeff: RationalFn | None = None) -> "ExpRationalSum":
        if coeff is None:
            coeff = RationalFn.constant(lam.rank, 1)
        return cls(lam.rank, [(lam, coeff)])

    @classmethod
    def rational(cls, r: RationalFn) -> "ExpRationalSum":
        return cls(r.nvars, [(Weight.zero(r.nvars), r)])

    def normalize(self) -> "ExpRationalSum":
        return ExpRationalSum(self.rank, self.terms)

    def _coerce(self, other) -> "ExpRationalSum":
        if isinstance(other, ExpRationalSum):
            if other.rank != self.rank:
                raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        if isinstance(other, (RationalFn, MultiPoly)):
            r = other if isinstance(other, RationalFn) else RationalFn(other)
            return ExpRationalSum.rational(r)
        if isinstance(other, (int, GaussRat, PiScalar)):
            return ExpRationalSum.rational(RationalFn.constant(self.rank, other))
        raise TypeError(f"cannot combine ExpRationalSum with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return ExpRationalSum(self.rank, list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return ExpRationalSum(self.rank, [(lam, -c) for lam, c in self.terms.items()])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, GaussRat, PiScalar)):
            return self.scale(other)
        other = self._coerce(other)
        out = []
        for l1, c1 in self.terms.items():
            for l2, c2 in other.terms.items():
                out.append((l1 + l2, c1 * c2))
        return ExpRationalSum(self.rank, out)

    __rmul__ = __mul__

    def scale(self, s) -> "ExpRationalSum":
        s = PiScalar.coerce(s)
        return ExpRationalSum(self.rank, [(lam, c.scale(s)) for lam, c in self.terms.items()])

    def __eq__(self, other):
        if not isinstance(other, ExpRationalSum):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return render_exp(self)

    def __repr__(self):
        return f"ExpRationalSum({render_exp(self)!r})"

    def exponents(self) -> list[Weight]:
        return sorted(self.terms, key=lambda w: w.sort_key())

    @property
    def is_rational(self) -> bool:
        """All exponents are zero."""
        return all(not lam for lam in self.terms)

    def as_rational(self) -> RationalFn:
        if not self.is_rational:
            raise ValueError("sum has nonzero exponents")
        if not self.terms:
            return RationalFn.constant(self.rank, 0)
        return next(iter(self.terms.values()))

    def exp_eval(self, X: Sequence, eps: float = EPS_DEN) -> complex:
        Xc = [complex(x) for x in X]
        total = 0j
        for lam in self.exponents():
            total += cmath.exp(lam.pair_numeric(Xc)) * self.terms[lam].eval_point(Xc, eps)
        return total

    __call__ = exp_eval

    def series_limit(self, direction: Sequence, order: int = 0) -> dict[int, PiScalar]:
        """Laurent coefficients of eps -> s(eps * direction), up to eps**order.

        ``direction`` must be exact (ints, Fractions or "p/q" strings). Keys run
        from the lowest pole order (or 0) up to ``order``.
        """
        if order > MAX_SERIES_ORDER:
            raise ValueError(f"series order {order} exceeds cap {MAX_SERIES_ORDER}")
        v = [GaussRat.coerce(Fraction(x) if isinstance(x, (int, str)) else x) for x in direction]
        if len(v) != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {len(v)}")
        coeffs: dict[int, PiScalar] = {}
        low = 0
        for lam in self.exponents():
            r = self.terms[lam]
            if not r.den_scalar.is_one:
                r = r.normalize()
            c = GaussRat(1)
            D = 0
            for w, m in r.den_factors:
                pv = w.pair(v)
                if not pv:
                    raise NonRegularDirection(f"<{w}, v> = 0 along direction {list(direction)}")
                c = c * pv ** m
                D += m
            a = lam.pair(v)
            exp_coeffs = [GaussRat(1)]
            for k in range(1, order + D + 1):
                exp_coeffs.append(exp_coeffs[-1] * a / k)
            for d in range(0, r.num.degree() + 1):
                nd = r.num.homogeneous_part(d)
                if not nd:
                    continue
                val = nd.evaluate(v) / PiScalar(c)
                low = min(low, d - D)
                for k, ek in enumerate(exp_coeffs):
                    j = d - D + k
                    if j > order:
                        break
                    coeffs[j] = coeffs.get(j, PiScalar(0)) + val * PiScalar(ek)
        return {j: coeffs.get(j, PiScalar(0)) for j in range(low, order + 1)}


def exp_eval(s: ExpRationalSum, X: Sequence, eps: float = EPS_DEN) -> complex:
    return s.exp_eval(X, eps)


def series_limit(s: ExpRationalSum, direction: Sequence, order: int = 0) -> dict[int, PiScalar]:
    return s.series_limit(direction, order)


def evaluate_laurent(coeffs: Mapping[int, PiScalar], eps: float) -> complex:
    return sum(complex(c) * eps ** j for j, c in coeffs.items())


def render_exp(s: ExpRationalSum) -> str:
    if not s.terms:
        return "0"
    parts = []
    for lam in s.exponents():
        body = render_rational(s.terms[lam])
        parts.append(body if not lam else f"e^{{{lam}}} * ({body})")
    return " + ".join(parts)

