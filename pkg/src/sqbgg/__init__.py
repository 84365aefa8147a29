"""Exact computations with squarefree modules over a polynomial ring and an exterior algebra."""

__version__ = "0.1.0"
