"""Combinatorics of planar maps, hypermaps and mobiles with exact series."""

__version__ = "0.1.0"
