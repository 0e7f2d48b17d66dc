"""Exact Bott-Chern, Aeppli and Dolbeault cohomology of bounded double complexes."""

__version__ = "0.1.0"
