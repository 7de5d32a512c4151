"""Exact arithmetic and verification tools for the Dickson-Guralnick-Zieve curve over F_q."""
from .curve import DGZCurve, build
from .errors import DGZError
from .gf import Field, build_field
from .tripoly import TriPoly

__all__ = ["DGZCurve", "DGZError", "Field", "TriPoly", "build", "build_field"]
__version__ = "0.1.0"
