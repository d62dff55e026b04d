"""Exact verification tools for finite stages of the affine infinite Grassmannian."""

from __future__ import annotations

__version__ = "0.1.0"

from .scalars import GF, QQ, Field, parse_field
from .exterior import ExteriorElement, Stage

__all__ = ["GF", "QQ", "Field", "parse_field", "ExteriorElement", "Stage", "__version__"]
