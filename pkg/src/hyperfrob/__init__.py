"""Exact Frobenius-splitting constructions for rank <= 2 hyperalgebras."""

__version__ = "0.1.0"
