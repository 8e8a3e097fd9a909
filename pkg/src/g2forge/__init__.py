"""Closed G2-structures on seven-dimensional Lie algebras, computed exactly."""

__version__ = "0.1.0"
