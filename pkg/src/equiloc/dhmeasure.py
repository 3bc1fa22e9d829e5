"""Duistermaat-Heckman densities for circle actions with isolated fixed points.

Each fixed point p with moment value mu_p, weights c_{p,j} (X = t) and sign s_p
contributes (2 pi i)^m e^{i mu_p t} / (s_p prod_j c_{p,j} t^m), m = n/2.  The
inverse Fourier transform of e^{i mu t} / t^m taken with support to the right
of mu is (-i)^m (x - mu)_+^{m-1} / (m-1)!, so the density is

    sum_p (2 pi)^m / (s_p prod_j c_{p,j}) * (x - mu_p)_+^{m-1} / (m-1)!.

Choosing right-sided kernels for every point is consistent: the polynomial
remainder to the right of max mu_p must vanish for genuine fixed-point data,
which is checked on construction.  On S^2 this gives the uniform density 2 pi
on [-1, 1], the Archimedes pushforward.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .localize import FixedPointModel, ModelError, dh_localize
from .scalars import PiScalar, render_scalar


def _binom_expand(mu: Fraction, power: int) -> list[Fraction]:
    """Ascending coefficients of (x - mu)^power."""
    return [Fraction(math.comb(power, j)) * (-mu) ** (power - j) for j in range(power + 1)]


@dataclass(frozen=True)
class PiecewisePoly:
    """Polynomial pieces on consecutive intervals between breakpoints; zero outside.

    ``pieces[i]`` holds ascending coefficients in x, valid on
    [breakpoints[i], breakpoints[i+1]].
    """

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[tuple[PiScalar, ...], ...]

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    def piece_index(self, x: float) -> int | None:
        bp = self.breakpoints
        if x < bp[0] or x > bp[-1]:
            return None
        for i in range(len(bp) - 1):
            if x <= bp[i + 1]:
                return i
        return len(bp) - 2

    def __call__(self, x: float) -> float:
        i = self.piece_index(x)
        if i is None:
            return 0.0
        return _poly_eval(self.pieces[i], x).real

    def derivative_limits(self, order: int) -> list[tuple[float, float]]:
        """(left, right) limits of the given derivative at each interior breakpoint."""
        out = []
        for i in range(1, len(self.breakpoints) - 1):
            x = float(self.breakpoints[i])
            left = _poly_eval(_deriv(self.pieces[i - 1], order), x).real
            right = _poly_eval(_deriv(self.pieces[i], order), x).real
            out.append((left, right))
        return out

    def total_mass(self) -> PiScalar:
        total = PiScalar(0)
        for i, coeffs in enumerate(self.pieces):
            a, b = self.breakpoints[i], self.breakpoints[i + 1]
            for k, c in enumerate(coeffs):
                total = total + c * PiScalar((b ** (k + 1) - a ** (k + 1)) / (k + 1))
        return total

    def integral(self, a: float, b: float) -> float:
        """int_a^b density(x) dx, piece by piece."""
        total = 0.0
        for i, coeffs in enumerate(self.pieces):
            lo = max(a, float(self.breakpoints[i]))
            hi = min(b, float(self.breakpoints[i + 1]))
            if hi > lo:
                total += sum(complex(c).real * (hi ** (k + 1) - lo ** (k + 1)) / (k + 1)
                             for k, c in enumerate(coeffs))
        return total

    def fourier(self, t: float) -> complex:
        """int e^{itx} density(x) dx, piece by piece with exact antiderivatives."""
        total = 0j
        for i, coeffs in enumerate(self.pieces):
            a, b = float(self.breakpoints[i]), float(self.breakpoints[i + 1])
            moments = _exp_moments(a, b, t, len(coeffs) - 1)
            total += sum(complex(c) * m for c, m in zip(coeffs, moments))
        return total

    def as_dict(self) -> dict:
        return {
            "breakpoints": [str(b) for b in self.breakpoints],
            "pieces": [
                {
                    "interval": [str(self.breakpoints[i]), str(self.breakpoints[i + 1])],
                    "coeffs": [render_scalar(c) for c in coeffs],
                }
                for i, coeffs in enumerate(self.pieces)
            ],
            "total_mass": render_scalar(self.total_mass()),
        }


def _poly_eval(coeffs: Sequence[PiScalar], x: float) -> complex:
    out = 0j
    for c in reversed(coeffs):
        out = out * x + complex(c)
    return out


def _deriv(coeffs: Sequence[PiScalar], order: int) -> list[PiScalar]:
    c = list(coeffs)
    for _ in range(order):
        c = [c[k] * PiScalar(k) for k in range(1, len(c))] or [PiScalar(0)]
    return c


def _exp_moments(a: float, b: float, t: float, kmax: int) -> list[complex]:
    """I_k = int_a^b x^k e^{itx} dx for k = 0..kmax."""
    if t == 0:
        return [(b ** (k + 1) - a ** (k + 1)) / (k + 1) + 0j for k in range(kmax + 1)]
    it = 1j * t
    ea, eb = cmath.exp(it * a), cmath.exp(it * b)
    out = [(eb - ea) / it]
    for k in range(1, kmax + 1):
        out.append((b ** k * eb - a ** k * ea) / it - k * out[-1] / it)
    return out


def _kernel_coefficient(m: int, sign: int, weights: Sequence[Fraction]) -> PiScalar:
    """(2 pi)^m / (sign * prod c_j * (m-1)!)."""
    prod = Fraction(sign)
    for c in weights:
        prod *= c
    return PiScalar(Fraction(2**m) / (prod * math.factorial(m - 1)), m)


def dh_density(model: FixedPointModel) -> PiecewisePoly:
    if model.rank != 1:
        raise ModelError(f"DH densities are implemented for circle actions only (rank {model.rank})")
    m = model.half_dim
    if m == 0:
        raise ModelError("zero-dimensional model has no density")
    kernels = []
    for p in model.points:
        mu = p.mu.real_part()[0]
        cs = [w.imag_part()[0] for w in p.weights]
        kernels.append((mu, _kernel_coefficient(m, p.sign, cs)))
    bps = sorted({mu for mu, _ in kernels})
    pieces = []
    for i in range(len(bps)):
        acc = [PiScalar(0)] * m
        for mu, k in kernels:
            if mu <= bps[i]:
                for j, b in enumerate(_binom_expand(mu, m - 1)):
                    acc[j] = acc[j] + k * PiScalar(b)
        pieces.append(tuple(acc))
    tail = pieces.pop()
    if any(tail):
        raise ModelError("density does not vanish beyond the largest moment value; "
                         "check orientation signs and weights")
    if len(bps) == 1:
        raise ModelError("all fixed points share one moment value; density is a point mass")
    return PiecewisePoly(tuple(bps), tuple(pieces))


def density_fourier_check(d: PiecewisePoly, model: FixedPointModel, ts: Sequence[float]) -> float:
    """max_t |Fourier transform of the density - DH localization sum at t|."""
    loc = dh_localize(model)
    return max(abs(d.fourier(t) - loc.exp_eval([t])) for t in ts)
