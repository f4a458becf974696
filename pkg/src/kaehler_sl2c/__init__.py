"""Invariant Kaehler metrics on SL(2,C): geometry, moment map and quantization."""

__version__ = "0.1.0"
