"""Finite-field plane geometry: rigid motions, flats, congruence censuses and simplices over F_q."""

from .errors import QPlaneError
from .field import GF, FieldElement, PrimeField, QuadExtElement, legendre, quad_ext, sqrt, sum_of_two_squares
from .kernels import BACKEND
from .plane import PointSet, dist, generate, read_points, write_points

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FieldElement",
    "GF",
    "PointSet",
    "PrimeField",
    "QPlaneError",
    "QuadExtElement",
    "dist",
    "generate",
    "legendre",
    "quad_ext",
    "read_points",
    "sqrt",
    "sum_of_two_squares",
    "write_points",
]
