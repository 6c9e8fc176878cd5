"""Exact symbolic calculus for differential graded supercommutative algebras over Q."""

from __future__ import annotations

__version__ = "1.0.0"

from .core import (
    AlgebraError,
    AlgebraMap,
    Element,
    Generator,
    GeneratorTable,
    ParseError,
    compose_maps,
    identity_map,
    parse,
    partial,
    render,
)

__all__ = [
    "AlgebraError",
    "AlgebraMap",
    "Element",
    "Generator",
    "GeneratorTable",
    "ParseError",
    "compose_maps",
    "identity_map",
    "parse",
    "partial",
    "render",
    "__version__",
]
