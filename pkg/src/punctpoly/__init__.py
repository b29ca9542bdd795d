"""Exact enumeration and series analysis for punctured lattice polygons."""

__version__ = "0.1.0"
