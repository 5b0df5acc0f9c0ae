# coulombxs/__init__.py
"""Nonasymptotic Coulomb scattering cross-sections and impurity-limited mobility."""

__version__ = "1.0.0"
