"""Exact character sums for finite unitary and symplectic groups."""

__version__ = "0.1.0"
