"""Filtered nonassociative algebras over F_p."""

from ._cfa import Algebra, Error, Space, load, run_cli

__all__ = ["Algebra", "Error", "Space", "load", "run_cli"]
