"""Mimetic finite-difference operators and Maxwell solvers on staggered grids."""

from .grids import GridError, StaggeredGrid1D, StaggeredGrid2D
from .maxwell1d import Scenario1D, build_scenario_sullivan_1d, run_1d, run_yee_1d
from .maxwell2d import PmlSpec, Scenario2D, build_scenario_sullivan_2d, run_2d
from .operators import (
    augmented_identity,
    div1d,
    div2d,
    grad1d,
    grad2d,
    laplacian,
    verify_identities,
)
from .sparse import DimensionError, SparseMatrix, hstack, kron, vstack

__all__ = [
    "DimensionError",
    "GridError",
    "PmlSpec",
    "Scenario1D",
    "Scenario2D",
    "SparseMatrix",
    "StaggeredGrid1D",
    "StaggeredGrid2D",
    "augmented_identity",
    "build_scenario_sullivan_1d",
    "build_scenario_sullivan_2d",
    "div1d",
    "div2d",
    "grad1d",
    "grad2d",
    "hstack",
    "kron",
    "laplacian",
    "run_1d",
    "run_2d",
    "run_yee_1d",
    "verify_identities",
    "vstack",
]

__version__ = "0.1.0"
