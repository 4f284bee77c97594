"""Exact computations with arithmetic groups: reduction theory, SL2(Z), E7(Z)."""

__version__ = "0.1.0"
