"""Footprint and Feng-Rao bounds, evaluation codes over Cartesian grids, and
interpolation with prescribed leading monomials."""

__version__ = "0.1.0"

from .errors import FootprintError
from .field import GF, RATIONAL, FieldElem, FieldSpec, parse_field
from .monomial import BoxRegion, MonomialOrder, mu, parse_order, sigma
from .poly import CartesianGrid, PointSet, Polynomial, parse_polynomial

__all__ = [
    "BoxRegion",
    "CartesianGrid",
    "FieldElem",
    "FieldSpec",
    "FootprintError",
    "GF",
    "MonomialOrder",
    "PointSet",
    "Polynomial",
    "RATIONAL",
    "mu",
    "parse_field",
    "parse_order",
    "parse_polynomial",
    "sigma",
]
