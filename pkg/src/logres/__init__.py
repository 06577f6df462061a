"""Exact local computations for isolated hypersurface singularities:
standard bases, algebraic local cohomology, logarithmic vector fields,
torsion forms, logarithmic residues and Gauss-Manin data."""

from .errors import (
    LogresError,
    NonGenericCoordinateError,
    NonIsolatedError,
    NotIntegrallyClosedError,
    OutOfScopeError,
    ParseError,
    SpecializationError,
)
from .poly import LocalFraction, Polynomial, Ring

__version__ = "0.1.0"

__all__ = [
    "LocalFraction",
    "LogresError",
    "NonGenericCoordinateError",
    "NonIsolatedError",
    "NotIntegrallyClosedError",
    "OutOfScopeError",
    "ParseError",
    "Polynomial",
    "Ring",
    "SpecializationError",
]
