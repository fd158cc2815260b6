"""Krylov and information-geometric complexity of qubit evolutions."""

__version__ = "0.1.0"
