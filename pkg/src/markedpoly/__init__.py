"""Exact computation of marked-graph polynomials, chromatic symmetric functions
in the star basis, and reconstruction of small weighted trees."""

__version__ = "0.1.0"
