"""Exact lattice computations around Mukai lattices of K3 surfaces."""

__version__ = "0.1.0"
