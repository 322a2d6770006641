"""Exact and certified computations for plane partitions and their polynomial family."""

__version__ = "0.1.0"
