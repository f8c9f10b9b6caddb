"""Exact computations with Weil decorations on toric varieties and HM-type sheaves."""

__version__ = "0.1.0"
