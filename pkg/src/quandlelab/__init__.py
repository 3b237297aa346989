"""Quandle colouring invariants, associated groups and rack homology."""

__version__ = "0.1.0"
