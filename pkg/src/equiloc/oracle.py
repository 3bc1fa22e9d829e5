"""Floating-point checks on the unit sphere: product quadrature and pushforward histograms."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class QuadratureGrid:
    """Gauss-Legendre nodes in z = cos(latitude) times uniform longitudes.

    Exact for polynomials in z up to degree 2*n_lat - 1 and for trigonometric
    polynomials in longitude below degree n_lon.
    """

    n_lat: int = 64
    n_lon: int = 64
    x: np.ndarray = field(init=False, repr=False, compare=False)
    y: np.ndarray = field(init=False, repr=False, compare=False)
    z: np.ndarray = field(init=False, repr=False, compare=False)
    weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_lat < 1 or self.n_lon < 1:
            raise ValueError("grid resolution must be positive")
        zs, wz = np.polynomial.legendre.leggauss(self.n_lat)
        phi = 2 * math.pi * np.arange(self.n_lon) / self.n_lon
        Z, PHI = np.meshgrid(zs, phi, indexing="ij")
        r = np.sqrt(1.0 - Z**2)
        W = np.outer(wz, np.full(self.n_lon, 2 * math.pi / self.n_lon))
        object.__setattr__(self, "x", (r * np.cos(PHI)).ravel())
        object.__setattr__(self, "y", (r * np.sin(PHI)).ravel())
        object.__setattr__(self, "z", Z.ravel())
        object.__setattr__(self, "weights", W.ravel())

    def __len__(self):
        return self.weights.size


def sphere_integral(f: Callable, grid: QuadratureGrid) -> complex:
    """sum_i w_i f(node_i); f is called once on the coordinate arrays."""
    vals = np.asarray(f(grid.x, grid.y, grid.z), dtype=complex)
    if vals.shape == ():
        vals = np.full(len(grid), vals)
    # np.sum uses pairwise summation, so the result is reproducible
    return complex(np.sum(grid.weights * vals))


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    density: np.ndarray  # mass per unit length in each bin

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[1:] + self.edges[:-1])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    def total_mass(self) -> float:
        return float(np.sum(self.density * self.widths))


def pushforward_histogram(mu: Callable, grid: QuadratureGrid, bins: int = 20,
                          value_range: tuple[float, float] | None = None) -> Histogram:
    """Quadrature-weighted histogram of mu over the sphere, as a density per unit length."""
    if bins < 8:
        raise ValueError("need at least 8 bins")
    vals = np.broadcast_to(np.asarray(mu(grid.x, grid.y, grid.z), dtype=float), grid.weights.shape)
    if value_range is None:
        lo, hi = float(vals.min()), float(vals.max())
        if hi - lo < 1e-12:
            lo, hi = lo - 0.5, hi + 0.5
        value_range = (lo, hi)
    mass, edges = np.histogram(vals, bins=bins, range=value_range, weights=grid.weights)
    return Histogram(edges, mass / np.diff(edges))
