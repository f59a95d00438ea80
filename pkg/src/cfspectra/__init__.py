"""Exact continued fractions, Dirichlet/Lagrange spectrum constants and checks."""

__version__ = "0.1.0"
