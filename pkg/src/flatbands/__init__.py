"""Exact flat-band analysis for periodic graphs."""

__version__ = "0.1.0"
