"""Exact equivariant localization: fixed-point sums, Pfaffians, characters, GKM graphs
and Duistermaat-Heckman measures, with a floating-point oracle."""

from .characters import DominantWeight, kirillov_identity_check, weyl_character_eval
from .dhmeasure import PiecewisePoly, density_fourier_check, dh_density
from .exppoly import ExpRationalSum
from .gkm import GKMGraph, graded_dimension, poincare_rank_check
from .localize import FixedPointModel, IntegrandSpec, bv_localize, dh_localize, polynomiality_check
from .pfaffian import pfaffian, pfaffian_berezin
from .poly import MultiPoly, RationalFn
from .rootsys import build_root_system, weyl_group
from .scalars import GaussRat, PiScalar, Weight

__version__ = "0.1.0"

__all__ = [
    "DominantWeight",
    "ExpRationalSum",
    "FixedPointModel",
    "GKMGraph",
    "GaussRat",
    "IntegrandSpec",
    "MultiPoly",
    "PiScalar",
    "PiecewisePoly",
    "RationalFn",
    "Weight",
    "build_root_system",
    "bv_localize",
    "density_fourier_check",
    "dh_density",
    "dh_localize",
    "graded_dimension",
    "kirillov_identity_check",
    "pfaffian",
    "pfaffian_berezin",
    "poincare_rank_check",
    "polynomiality_check",
    "weyl_character_eval",
    "weyl_group",
]
