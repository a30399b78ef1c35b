"""Symbolic algebra of multi-mode bosonic ladder operators."""
from .poly import (
    CREATE,
    ANNIHILATE,
    LadderWord,
    NormalPoly,
    normal_order,
    multiply,
    commutator,
    dagger,
    vacuum_project,
    rename_modes,
)
from .linear_map import LinearModeMap, substitute
from .parser import parse_poly, parse_word, format_poly
from .quadrature import QuadratureElement, quadrature_poly

__all__ = [
    "CREATE",
    "ANNIHILATE",
    "LadderWord",
    "NormalPoly",
    "normal_order",
    "multiply",
    "commutator",
    "dagger",
    "vacuum_project",
    "rename_modes",
    "LinearModeMap",
    "substitute",
    "parse_poly",
    "parse_word",
    "format_poly",
    "QuadratureElement",
    "quadrature_poly",
]
