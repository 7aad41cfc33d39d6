"""Koszul forms and curvature on possibly degenerate semi-Riemannian manifolds."""

__version__ = "0.1.0"
