"""Dimer quivers on surfaces, their ghor algebras, and simple-module resolutions."""

from .matchings import build_label_table, enumerate_perfect_matchings
from .quiver import DimerQuiver, Path, load_dqif, parse_dqif, validate

__version__ = "0.1.0"

__all__ = ["DimerQuiver", "Path", "build_label_table", "enumerate_perfect_matchings",
           "load_dqif", "parse_dqif", "validate"]
