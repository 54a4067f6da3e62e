"""Exact-arithmetic geometry kernel and verification harness for the Hesse
pencil of plane cubics."""

__version__ = "0.1.0"
