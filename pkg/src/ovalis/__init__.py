"""Arf-invariant congruences for real plane algebraic curves."""

__version__ = "0.1.0"
