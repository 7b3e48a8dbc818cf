"""Resonances of ring particles around a rotating triaxial ellipsoid."""

__version__ = "0.1.0"
