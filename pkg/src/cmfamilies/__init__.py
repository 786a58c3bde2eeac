"""Euler families, supersingular characters and Calogero-Moser families of complex reflection groups."""

__version__ = "0.1.0"
