"""Exact scalars: Gaussian rationals, pi-graded scalars and linear forms on the torus.

Everything here is immutable and hashable so values can be used as dict keys
(exponents of exponential sums, denominator factors, ...).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rationalish = Union[int, Fraction, str]


def to_fraction(x: Rationalish) -> Fraction:
    """Parse an int, Fraction or a "p/q" string. Floats are rejected on purpose."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


class GaussRat:
    """Element re + im*i of Q(i)."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: Rationalish = 0, im: Rationalish = 0):
        self.re = to_fraction(re)
        self.im = to_fraction(im)
        self._hash = hash((self.re, self.im))

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact")
        return cls(x)

    @staticmethod
    def i() -> "GaussRat":
        return GaussRat(0, 1)

    def __add__(self, other):
        o = GaussRat.coerce(other)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussRat.coerce(other)
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussRat.coerce(other)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussRat.coerce(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * GaussRat(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussRat(1) / (self ** (-k))
        out = GaussRat(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        return render_gauss(self)

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    @property
    def is_imaginary(self) -> bool:
        return self.re == 0

    def sort_key(self):
        return (self.re, self.im)


def render_gauss(z: GaussRat) -> str:
    if z.im == 0:
        return str(z.re)
    im = "i" if z.im == 1 else "-i" if z.im == -1 else f"{z.im}*i"
    if z.re == 0:
        return im
    sign = "-" if z.im < 0 else "+"
    mag = "i" if abs(z.im) == 1 else f"{abs(z.im)}*i"
    return f"({z.re} {sign} {mag})"


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


class PiMismatch(ArithmeticError):
    """Addition of scalars carrying different powers of pi."""


class PiScalar:
    """Exact scalar coeff * pi**pi_exp with coeff in Q(i)."""

    __slots__ = ("coeff", "pi_exp", "_hash")

    def __init__(self, coeff=0, pi_exp: int = 0):
        c = GaussRat.coerce(coeff)
        self.coeff = c
        self.pi_exp = int(pi_exp) if c else 0
        self._hash = hash((c, self.pi_exp))

    @classmethod
    def coerce(cls, x) -> "PiScalar":
        if isinstance(x, PiScalar):
            return x
        return cls(GaussRat.coerce(x), 0)

    @classmethod
    def pi(cls, k: int = 1) -> "PiScalar":
        return cls(1, k)

    def __add__(self, other):
        o = PiScalar.coerce(other)
        if not o.coeff:
            return self
        if not self.coeff:
            return o
        if self.pi_exp != o.pi_exp:
            raise PiMismatch(f"cannot add pi^{self.pi_exp} and pi^{o.pi_exp} terms")
        return PiScalar(self.coeff + o.coeff, self.pi_exp)

    __radd__ = __add__

    def __neg__(self):
        return PiScalar(-self.coeff, self.pi_exp)

    def __sub__(self, other):
        return self + (-PiScalar.coerce(other))

    def __rsub__(self, other):
        return PiScalar.coerce(other) - self

    def __mul__(self, other):
        o = PiScalar.coerce(other)
        return PiScalar(self.coeff * o.coeff, self.pi_exp + o.pi_exp)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = PiScalar.coerce(other)
        return PiScalar(self.coeff / o.coeff, self.pi_exp - o.pi_exp)

    def __rtruediv__(self, other):
        return PiScalar.coerce(other) / self

    def __pow__(self, k: int):
        return PiScalar(self.coeff ** k, self.pi_exp * k)

    def __eq__(self, other):
        if isinstance(other, PiScalar):
            return self.coeff == other.coeff and self.pi_exp == other.pi_exp
        if isinstance(other, (int, Fraction, GaussRat)):
            return self == PiScalar.coerce(other)
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self.coeff)

    def __complex__(self):
        return complex(self.coeff) * math.pi ** self.pi_exp

    def __repr__(self):
        return f"PiScalar({self.coeff!r}, {self.pi_exp})"

    def __str__(self):
        return render_scalar(self)

    @property
    def is_one(self) -> bool:
        return self.pi_exp == 0 and self.coeff == ONE


def _pi_suffix(k: int) -> str:
    if k == 0:
        return ""
    return "pi" if k == 1 else f"pi^{k}"


def render_scalar(s: PiScalar) -> str:
    """Canonical text: "4*pi", "-2", "1/2*i", "(1 - 2*i)*pi^2"."""
    if not s.coeff:
        return "0"
    suffix = _pi_suffix(s.pi_exp)
    if not suffix:
        return render_gauss(s.coeff)
    if s.coeff == ONE:
        return suffix
    if s.coeff == -ONE:
        return "-" + suffix
    return f"{render_gauss(s.coeff)}*{suffix}"


class Weight:
    """Linear form on the complexified torus Lie algebra: X -> sum_j coords[j] * X[j].

    Root-type weights have purely imaginary coordinates, real-type ones purely
    real coordinates; both are instances of this one class.
    """

    __slots__ = ("coords", "_hash")

    def __init__(self, coords: Iterable):
        self.coords = tuple(GaussRat.coerce(c) for c in coords)
        self._hash = hash(self.coords)

    @classmethod
    def real(cls, values: Sequence[Rationalish]) -> "Weight":
        return cls(GaussRat(v) for v in values)

    @classmethod
    def imaginary(cls, values: Sequence[Rationalish]) -> "Weight":
        """The weight i*values."""
        return cls(GaussRat(0, v) for v in values)

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls([ZERO] * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, j):
        return self.coords[j]

    def _check(self, other: "Weight"):
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "Weight"):
        self._check(other)
        return Weight(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Weight"):
        self._check(other)
        return Weight(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return Weight(-a for a in self.coords)

    def scale(self, c) -> "Weight":
        c = GaussRat.coerce(c)
        return Weight(c * a for a in self.coords)

    def __eq__(self, other):
        return isinstance(other, Weight) and self.coords == other.coords

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        return f"Weight({render_weight(self)})"

    def __str__(self):
        return render_weight(self)

    @property
    def is_root_type(self) -> bool:
        return all(c.is_imaginary for c in self.coords)

    @property
    def is_real_type(self) -> bool:
        return all(c.is_real for c in self.coords)

    def real_part(self) -> tuple[Fraction, ...]:
        return tuple(c.re for c in self.coords)

    def imag_part(self) -> tuple[Fraction, ...]:
        return tuple(c.im for c in self.coords)

    def pair(self, X: Sequence) -> GaussRat:
        """Exact pairing with a vector of rationals (or Gaussian rationals)."""
        if len(X) != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {len(X)}")
        out = ZERO
        for c, x in zip(self.coords, X):
            if c:
                out = out + c * GaussRat.coerce(x)
        return out

    def pair_numeric(self, X: Sequence[complex]) -> complex:
        if len(X) != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {len(X)}")
        return sum(complex(c) * x for c, x in zip(self.coords, X))

    def pivot(self) -> int:
        """Index of the first nonzero coordinate."""
        for j, c in enumerate(self.coords):
            if c:
                return j
        raise ZeroDivisionError("zero weight has no pivot")

    def normalized(self) -> tuple[GaussRat, "Weight"]:
        """Split self = c * w with the first nonzero coordinate of w equal to 1."""
        c = self.coords[self.pivot()]
        return c, Weight(a / c for a in self.coords)

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coords)


def render_weight(w: Weight) -> str:
    return "[" + ", ".join(render_gauss(c) for c in w.coords) + "]"
