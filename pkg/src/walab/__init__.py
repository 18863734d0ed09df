"""Exact computations for lattice vertex algebras, minimal W-algebras and their characters."""

__version__ = "0.1.0"
