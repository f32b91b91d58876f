"""Concomitants of ternary quartics and genus-3 Siegel modular form expansions."""

__version__ = "0.1.0"
