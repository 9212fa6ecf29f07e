"""Projection-ramification maps of varieties of minimal degree over F_p."""

__version__ = "0.1.0"
