"""Finite Pervin/Frith frame workbench."""

__version__ = "0.1.0"
