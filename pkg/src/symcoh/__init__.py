"""Symmetric cohomology of finite commutative monoids and the strictly
symmetric monoidal groupoids it classifies."""

__version__ = "0.1.0"
