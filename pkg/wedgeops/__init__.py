"""Exterior powers of Hilbert spaces and pointwise creation operators on Hardy spaces."""

__version__ = "0.1.0"
