"""Computations with endo-permutation modules and Dade groups of finite p-groups."""

__version__ = "0.1.0"
