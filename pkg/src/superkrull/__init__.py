"""Krull super-dimension and related invariants of K[X | Y]/J over Q or GF(p)."""

__version__ = "0.1.0"

from .errors import (
    HomogeneityError,
    InvariantViolation,
    ParseError,
    RingMismatchError,
    ScopeError,
    SuperKrullError,
    ZeroAlgebraError,
)
from .polyarith import GF, GREVLEX, LEX, QQ, Field, MonomialOrder, PolyRing, Polynomial
from .superpoly import SuperPolynomial, SuperRing, super_mul, unit_inverse
from .ksdim import SuperDim, SuperPresentation, ksdim, odd_dim, even_dim
from .parser import parse_expression, parse_presentation

__all__ = [
    "Field",
    "GF",
    "GREVLEX",
    "HomogeneityError",
    "InvariantViolation",
    "LEX",
    "MonomialOrder",
    "ParseError",
    "PolyRing",
    "Polynomial",
    "QQ",
    "RingMismatchError",
    "ScopeError",
    "SuperDim",
    "SuperKrullError",
    "SuperPolynomial",
    "SuperPresentation",
    "SuperRing",
    "ZeroAlgebraError",
    "even_dim",
    "ksdim",
    "odd_dim",
    "parse_expression",
    "parse_presentation",
    "super_mul",
    "unit_inverse",
]
