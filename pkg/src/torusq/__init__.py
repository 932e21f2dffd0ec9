"""Birational invariants of quotients of complex tori by finite affine groups."""

__version__ = "0.1.0"
