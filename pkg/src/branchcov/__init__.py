"""Exact computations for cyclic branched covers, SICUP matrices and braid closures."""

from .matrices import IntMatrix, circulant_from_first_row, det_exact, verify_sicup
from .poly import IntPoly

__all__ = [
    "IntMatrix",
    "IntPoly",
    "circulant_from_first_row",
    "det_exact",
    "verify_sicup",
]

__version__ = "0.1.0"
