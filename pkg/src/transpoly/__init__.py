"""Exact invariants of base rings of transversal polymatroids."""

__version__ = "0.1.0"
