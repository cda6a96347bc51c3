"""Exact double Hurwitz numbers, chamber polynomials, and wall crossings."""

__version__ = "0.1.0"
