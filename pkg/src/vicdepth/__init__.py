"""Depth, weights and VIC-module tools for representations of GL_n over Z and Z/ℓ."""

__version__ = "0.1.0"
