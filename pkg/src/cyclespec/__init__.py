"""Cycle-length spectra, modular cycles and exhaustive checking on small graphs."""

__version__ = "0.1.0"
