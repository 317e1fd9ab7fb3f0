"""Curvature comparison tests on exotic metric spaces, with exact lattice backends."""

__version__ = "0.1.0"
