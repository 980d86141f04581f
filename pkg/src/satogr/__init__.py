"""Exact computations on points of the multi-component Sato Grassmannian."""

__version__ = "0.1.0"
