"""Induced crossed modules, cat1-groups and the computational group theory underneath them."""

__version__ = "0.1.0"
