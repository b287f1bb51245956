"""Invariants of rigid pairs in B, C and D theories."""

__version__ = "0.1.0"
