"""Finite decision procedures for cone avoidance of Ramsey-like problems."""

__version__ = "0.1.0"
