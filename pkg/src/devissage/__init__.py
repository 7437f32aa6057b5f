"""Combinatorial group theory for fundamental groups of curves and their finite quotients."""

__version__ = "0.1.0"
