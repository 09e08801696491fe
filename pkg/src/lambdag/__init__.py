"""Exact computations around graded multiplicities in the exterior algebra of a
simple Lie algebra: root systems, affine Weyl groups, Demazure-Lusztig
operators, Cherednik and Macdonald scalar products at t = q^(-k/2), and the
GM_0, GM_theta, GM_theta_s polynomials."""

from .coeff import QtScalar
from .gradedmult import (
    decompose,
    exterior_character,
    gm_formula_theta,
    gm_formula_theta_s,
    gm_formula_zero,
    gm_via_macdonald,
)
from .groupalg import AlgebraElement, e
from .rootsys import RootSystem, build_root_system

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "QtScalar",
    "RootSystem",
    "build_root_system",
    "decompose",
    "e",
    "exterior_character",
    "gm_formula_theta",
    "gm_formula_theta_s",
    "gm_formula_zero",
    "gm_via_macdonald",
]
