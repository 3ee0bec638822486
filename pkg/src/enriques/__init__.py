"""Exact lattice combinatorics of half-fiber sequences on Enriques surfaces."""

__version__ = "0.1.0"
