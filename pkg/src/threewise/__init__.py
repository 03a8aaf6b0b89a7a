"""Exact verification toolkit for non-trivial 3-wise intersecting families."""

__version__ = "0.1.0"
