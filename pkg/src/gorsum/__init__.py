"""Exact computations with fiber products and connected sums of artinian local algebras."""

from .fields import GF, QQ, FieldError, field_from_name

__version__ = "0.1.0"

__all__ = ["GF", "QQ", "FieldError", "field_from_name", "__version__"]
