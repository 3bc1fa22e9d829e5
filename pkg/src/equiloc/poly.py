"""Sparse exact polynomials on the torus and rational functions with linear denominators."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .scalars import GaussRat, PiScalar, Weight, render_scalar

Exponent = tuple[int, ...]

EPS_DEN = 1e-12


class NotDivisible(ArithmeticError):
    """The polynomial is not a multiple of the given linear form."""


class NearPole(ArithmeticError):
    """A denominator factor (nearly) vanishes at the evaluation point."""


def _grlex_key(e: Exponent):
    return (sum(e), e)


class MultiPoly:
    """Polynomial in ``nvars`` variables with PiScalar coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, PiScalar] | None = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            c = PiScalar.coerce(c)
            if c:
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: PiScalar.coerce(c)})

    @classmethod
    def var(cls, nvars: int, j: int) -> "MultiPoly":
        e = [0] * nvars
        e[j] = 1
        return cls(nvars, {tuple(e): PiScalar(1)})

    @classmethod
    def linear(cls, w: Weight) -> "MultiPoly":
        """The linear form X -> <w, X>."""
        terms = {}
        for j, c in enumerate(w.coords):
            e = [0] * w.rank
            e[j] = 1
            terms[tuple(e)] = PiScalar(c)
        return cls(w.rank, terms)

    def _check(self, other: "MultiPoly"):
        if other.nvars != self.nvars:
            raise ValueError(f"rank mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        acc: dict[Exponent, PiScalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                acc[e] = acc[e] + p if e in acc else p
        return MultiPoly(self.nvars, acc)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s) -> "MultiPoly":
        s = PiScalar.coerce(s)
        if not s:
            return MultiPoly.zero(self.nvars)
        return MultiPoly(self.nvars, {e: c * s for e, c in self.terms.items()})

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, GaussRat, PiScalar)):
            return self == MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {render_poly(self)!r})"

    def __str__(self):
        return render_poly(self)

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self) -> PiScalar:
        return self.terms.get((0,) * self.nvars, PiScalar(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def topological_degree(self) -> int:
        return 2 * self.degree()

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def evaluate(self, X: Sequence) -> PiScalar:
        """Exact value at a point with rational / Gaussian-rational coordinates."""
        Xg = [GaussRat.coerce(x) for x in X]
        if len(Xg) != self.nvars:
            raise ValueError(f"rank mismatch: {self.nvars} vs {len(Xg)}")
        out = PiScalar(0)
        for e, c in self.terms.items():
            m = GaussRat(1)
            for x, k in zip(Xg, e):
                if k:
                    m = m * x ** k
            out = out + c * m
        return out

    def eval_point(self, X: Sequence[complex]) -> complex:
        if len(X) != self.nvars:
            raise ValueError(f"rank mismatch: {self.nvars} vs {len(X)}")
        total = 0j
        for e, c in self.terms.items():
            m = complex(c)
            for x, k in zip(X, e):
                if k:
                    m *= x ** k
            total += m
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose with x_j -> images[j]; all images share a variable count."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return self
        target = images[0].nvars
        powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.constant(target, 1)} for _ in images]

        def pw(j: int, k: int) -> MultiPoly:
            cache = powers[j]
            if k not in cache:
                cache[k] = pw(j, k - 1) * images[j]
            return cache[k]

        out = MultiPoly.zero(target)
        for e, c in self.terms.items():
            t = MultiPoly.constant(target, c)
            for j, k in enumerate(e):
                if k:
                    t = t * pw(j, k)
            out = out + t
        return out

    def coefficients_in(self, j: int) -> dict[int, "MultiPoly"]:
        """Split as sum_d c_d * x_j^d with c_d free of x_j."""
        parts: dict[int, dict[Exponent, PiScalar]] = defaultdict(dict)
        for e, c in self.terms.items():
            d = e[j]
            e2 = e[:j] + (0,) + e[j + 1:]
            parts[d][e2] = c
        return {d: MultiPoly(self.nvars, t) for d, t in parts.items()}


def monomials(nvars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of the given total degree, in graded-lex descending order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []

    def rec(prefix: tuple, left: int, slots: int):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for a in range(left, -1, -1):
            rec(prefix + (a,), left - a, slots - 1)

    rec((), degree, nvars)
    return out


def _render_monomial(e: Exponent) -> str:
    parts = []
    for j, k in enumerate(e):
        if k == 1:
            parts.append(f"x{j + 1}")
        elif k > 1:
            parts.append(f"x{j + 1}^{k}")
    return "*".join(parts)


def render_poly(p: MultiPoly) -> str:
    """Canonical text, terms in graded-lex order (highest first)."""
    if not p.terms:
        return "0"
    chunks = []
    for e in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[e]
        mono = _render_monomial(e)
        neg = c.coeff.im == 0 and c.coeff.re < 0
        mag = -c if neg else c
        if not mono:
            body = render_scalar(mag)
        elif mag.is_one:
            body = mono
        else:
            body = f"{render_scalar(mag)}*{mono}"
        if not chunks:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append((" - " if neg else " + ") + body)
    return "".join(chunks)


def divide_by_linear(p: MultiPoly, w: Weight) -> MultiPoly:
    """Exact quotient p / <w, X>; raises NotDivisible when the remainder is nonzero.

    With k the pivot of w and w/w_k = x_k + r, p is divided as a polynomial in
    x_k by the monic x_k + r; the remainder is p restricted to ker w.
    """
    if p.nvars != w.rank:
        raise ValueError(f"rank mismatch: {p.nvars} vs {w.rank}")
    if not w:
        raise ValueError("division by the zero linear form")
    lead, wn = w.normalized()
    if not p:
        return p
    k = wn.pivot()
    a = -MultiPoly.linear(Weight(c if j != k else GaussRat(0) for j, c in enumerate(wn.coords)))
    parts = p.coefficients_in(k)
    top = max(parts)
    xk = MultiPoly.var(p.nvars, k)
    zero = MultiPoly.zero(p.nvars)
    # synthetic division by (x_k - a)
    b = parts.get(top, zero)
    quotient = zero
    for d in range(top - 1, -1, -1):
        quotient = quotient + b * xk ** d
        b = parts.get(d, zero) + a * b
    if b:
        raise NotDivisible(f"{render_poly(p)} is not divisible by {render_poly(MultiPoly.linear(w))}")
    return quotient.scale(PiScalar(1) / PiScalar(lead))


def divides(w: Weight, p: MultiPoly) -> bool:
    try:
        divide_by_linear(p, w)
    except NotDivisible:
        return False
    return True


def kernel_basis(w: Weight) -> list[tuple[GaussRat, ...]]:
    """Basis of ker w from elimination on the first nonzero coordinate.

    One vector per free coordinate j (j != pivot): e_j - (w_j / w_k) e_k.
    """
    if not w:
        raise ValueError("zero weight has no proper kernel")
    k = w.pivot()
    wk = w.coords[k]
    basis = []
    for j in range(w.rank):
        if j == k:
            continue
        v = [GaussRat(0)] * w.rank
        v[j] = GaussRat(1)
        v[k] = -w.coords[j] / wk
        basis.append(tuple(v))
    return basis


def restrict_to_kernel(p: MultiPoly, w: Weight) -> MultiPoly:
    """Pull p back along the parametrisation t -> sum_j t_j b_j of ker w."""
    if p.nvars != w.rank:
        raise ValueError(f"rank mismatch: {p.nvars} vs {w.rank}")
    basis = kernel_basis(w)
    m = len(basis)
    images = []
    for i in range(w.rank):
        terms = {}
        for j, b in enumerate(basis):
            if b[i]:
                e = [0] * m
                e[j] = 1
                terms[tuple(e)] = PiScalar(b[i])
        images.append(MultiPoly(m, terms))
    return p.substitute(images)


def _merge_factors(factors: Iterable[tuple[Weight, int]]) -> dict[Weight, int]:
    out: dict[Weight, int] = {}
    for w, m in factors:
        if m:
            out[w] = out.get(w, 0) + m
    return out


@dataclass(frozen=True, eq=False)
class RationalFn:
    """num / (den_scalar * prod <w, X>^m) over the denominator factors.

    Use :meth:`make` to build; it returns the canonical form, in which every
    factor is scaled to have first nonzero coordinate 1, no factor divides the
    numerator and ``den_scalar`` is 1.
    """

    num: MultiPoly
    den_factors: tuple[tuple[Weight, int], ...] = ()
    den_scalar: PiScalar = PiScalar(1)

    @classmethod
    def make(cls, num: MultiPoly, den_factors: Iterable[tuple[Weight, int]] = (),
             den_scalar=1) -> "RationalFn":
        den_scalar = PiScalar.coerce(den_scalar)
        if not den_scalar:
            raise ZeroDivisionError("zero denominator scalar")
        factors: dict[Weight, int] = {}
        for w, m in den_factors:
            if w.rank != num.nvars:
                raise ValueError(f"rank mismatch: {num.nvars} vs {w.rank}")
            if not w:
                raise ZeroDivisionError("zero linear form in a denominator")
            if m < 0:
                raise ValueError("negative multiplicity")
            c, wn = w.normalized()
            den_scalar = den_scalar * PiScalar(c) ** m
            factors[wn] = factors.get(wn, 0) + m
        if not num:
            return cls(MultiPoly.zero(num.nvars))
        for w in list(factors):
            while factors[w]:
                try:
                    num = divide_by_linear(num, w)
                except NotDivisible:
                    break
                factors[w] -= 1
        num = num.scale(PiScalar(1) / den_scalar)
        fac = tuple(sorted(((w, m) for w, m in factors.items() if m),
                           key=lambda t: t[0].sort_key(), reverse=True))
        return cls(num, fac)

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "RationalFn":
        return cls(p)

    @classmethod
    def constant(cls, nvars: int, c) -> "RationalFn":
        return cls(MultiPoly.constant(nvars, c))

    @classmethod
    def inverse_linear(cls, w: Weight, mult: int = 1) -> "RationalFn":
        return cls.make(MultiPoly.constant(w.rank, 1), [(w, mult)])

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def normalize(self) -> "RationalFn":
        return RationalFn.make(self.num, self.den_factors, self.den_scalar)

    @property
    def is_polynomial(self) -> bool:
        return not self.den_factors

    def den_degree(self) -> int:
        return sum(m for _, m in self.den_factors)

    def __add__(self, other):
        other = _as_rational(other, self.nvars)
        if other.nvars != self.nvars:
            raise ValueError(f"rank mismatch: {self.nvars} vs {other.nvars}")
        a = self.normalize() if not self.den_scalar.is_one else self
        b = other.normalize() if not other.den_scalar.is_one else other
        fa, fb = dict(a.den_factors), dict(b.den_factors)
        common = {w: max(fa.get(w, 0), fb.get(w, 0)) for w in set(fa) | set(fb)}
        na, nb = a.num, b.num
        for w, m in common.items():
            lin = MultiPoly.linear(w)
            if m - fa.get(w, 0):
                na = na * lin ** (m - fa.get(w, 0))
            if m - fb.get(w, 0):
                nb = nb * lin ** (m - fb.get(w, 0))
        return RationalFn.make(na + nb, common.items())

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den_factors, self.den_scalar)

    def __sub__(self, other):
        return self + (-_as_rational(other, self.nvars))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_rational(other, self.nvars)
        if other.nvars != self.nvars:
            raise ValueError(f"rank mismatch: {self.nvars} vs {other.nvars}")
        factors = _merge_factors(list(self.den_factors) + list(other.den_factors))
        return RationalFn.make(self.num * other.num, factors.items(),
                               self.den_scalar * other.den_scalar)

    __rmul__ = __mul__

    def scale(self, s) -> "RationalFn":
        return RationalFn(self.num.scale(s), self.den_factors, self.den_scalar)

    def __eq__(self, other):
        if not isinstance(other, RationalFn):
            try:
                other = _as_rational(other, self.nvars)
            except TypeError:
                return NotImplemented
        a = self if self.den_scalar.is_one else self.normalize()
        b = other if other.den_scalar.is_one else other.normalize()
        return a.num == b.num and a.den_factors == b.den_factors

    def __hash__(self):
        a = self if self.den_scalar.is_one else self.normalize()
        return hash((a.num, a.den_factors))

    def __bool__(self):
        return bool(self.num)

    def __str__(self):
        return render_rational(self)

    def __repr__(self):
        return f"RationalFn({render_rational(self)!r})"

    def eval_point(self, X: Sequence[complex], eps: float = EPS_DEN) -> complex:
        den = complex(self.den_scalar)
        for w, m in self.den_factors:
            v = w.pair_numeric(X)
            if abs(v) < eps:
                raise NearPole(f"<{w}, X> = {v!r} is within {eps} of zero")
            den *= v ** m
        return self.num.eval_point(X) / den


def _as_rational(x, nvars: int) -> RationalFn:
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, MultiPoly):
        return RationalFn(x)
    if isinstance(x, (int, GaussRat, PiScalar)):
        return RationalFn.constant(nvars, x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational function")


def eval_point(p: MultiPoly | RationalFn, X: Sequence[complex], eps: float = EPS_DEN) -> complex:
    """Numeric value at X; pi is replaced by its double value."""
    if isinstance(p, RationalFn):
        return p.eval_point(X, eps)
    return p.eval_point(X)


def render_rational(r: RationalFn) -> str:
    if not r.den_scalar.is_one:
        r = r.normalize()
    num = render_poly(r.num)
    if not r.den_factors:
        return num
    dens = []
    for w, m in r.den_factors:
        lin = render_poly(MultiPoly.linear(w))
        if len(w.coords) > 1 and sum(1 for c in w.coords if c) > 1:
            lin = f"({lin})"
        dens.append(lin if m == 1 else f"{lin}^{m}")
    if len(r.num.terms) > 1:
        num = f"({num})"
    den = "*".join(dens)
    if len(dens) > 1 or (r.den_factors[0][1] > 1 and not den.startswith("(")):
        den = f"({den})"
    return f"{num}/{den}"

