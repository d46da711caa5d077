"""Exact verification of quantum algebras, their Hopf structures and limits."""

__version__ = "0.1.0"
