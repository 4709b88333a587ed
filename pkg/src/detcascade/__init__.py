"""Exact symbolic verification of determinantal threefold constructions."""

__version__ = "0.1.0"
