"""Numerical tools for the convex hull of planar Brownian motion."""

__version__ = "0.1.0"
