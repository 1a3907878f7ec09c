"""Exact orbifold topological vertex and Donaldson-Thomas gluing for toric CY3 orbifolds."""

__version__ = "0.1.0"
