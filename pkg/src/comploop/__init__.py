"""Compression-in-the-loop benchmark for perception-driven tabletop agents."""

__version__ = "0.1.0"
