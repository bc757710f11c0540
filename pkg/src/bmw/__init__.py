"""Exact Gram determinants and seminormal representations of BMW algebras."""

__version__ = "0.1.0"
