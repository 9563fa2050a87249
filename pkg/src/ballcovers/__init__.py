"""Exact lattice computations for degree-3^n covers of Hirzebruch's ball quotient."""

__version__ = "0.1.0"
