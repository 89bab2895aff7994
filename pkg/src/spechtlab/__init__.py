"""Finite-field tools for vertices and sources of hook Specht modules."""

__version__ = "0.1.0"
