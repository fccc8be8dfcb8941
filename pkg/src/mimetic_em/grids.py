"""Staggered grid layouts shared by the mimetic operators and solvers.

1D: scalars live at the two boundary nodes and the ``m`` cell centers
(``m + 2`` values); vectors live at the ``m + 1`` cell edges.

2D: scalars form the tensor product of the 1D scalar sets, flattened with x
varying fastest, so index ``j * (mx + 2) + i`` holds ``(x_i, y_j)``. Edge
vectors are two concatenated blocks: the x-edge block (x on edges, y on
interior centers, ``my * (mx + 1)`` values) followed by the y-edge block
(x on interior centers, y on edges, ``mx * (my + 1)`` values). Both blocks
are x-fastest as well.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

MIN_CELLS = 3


class GridError(ValueError):
    """Grid parameters outside the supported range."""


def _check_cells(m: int, name: str = "m") -> None:
    if int(m) != m:
        raise GridError(f"{name} must be an integer, got {m!r}")
    if m < MIN_CELLS:
        raise GridError(
            f"{name}={m} is too small: boundary stencils overlap below "
            f"{MIN_CELLS} cells"
        )


def _check_spacing(h: float, name: str = "dx") -> None:
    if not np.isfinite(h) or h <= 0:
        raise GridError(f"{name} must be positive and finite, got {h!r}")


def scalar_coords_1d(m: int, dx: float, x0: float = 0.0) -> NDArray[np.float64]:
    x = np.empty(m + 2)
    x[0] = x0
    x[1:-1] = x0 + (np.arange(m) + 0.5) * dx
    x[-1] = x0 + m * dx
    return x


def edge_coords_1d(m: int, dx: float, x0: float = 0.0) -> NDArray[np.float64]:
    return x0 + np.arange(m + 1) * dx


@dataclass(frozen=True)
class StaggeredGrid1D:
    m: int
    dx: float = 1.0
    x0: float = 0.0

    def __post_init__(self) -> None:
        _check_cells(self.m)
        _check_spacing(self.dx)

    @property
    def n_scalar(self) -> int:
        return self.m + 2

    @property
    def n_edge(self) -> int:
        return self.m + 1

    @property
    def x1(self) -> float:
        return self.x0 + self.m * self.dx

    @property
    def scalar_coords(self) -> NDArray[np.float64]:
        return scalar_coords_1d(self.m, self.dx, self.x0)

    @property
    def edge_coords(self) -> NDArray[np.float64]:
        return edge_coords_1d(self.m, self.dx, self.x0)


@dataclass(frozen=True)
class StaggeredGrid2D:
    mx: int
    my: int
    dx: float = 1.0
    dy: float = 1.0
    x0: float = 0.0
    y0: float = 0.0

    def __post_init__(self) -> None:
        _check_cells(self.mx, "mx")
        _check_cells(self.my, "my")
        _check_spacing(self.dx, "dx")
        _check_spacing(self.dy, "dy")

    @property
    def x_grid(self) -> StaggeredGrid1D:
        return StaggeredGrid1D(self.mx, self.dx, self.x0)

    @property
    def y_grid(self) -> StaggeredGrid1D:
        return StaggeredGrid1D(self.my, self.dy, self.y0)

    @property
    def scalar_shape(self) -> tuple[int, int]:
        """Array shape ``(ny, nx)`` of the scalar layout (rows are y)."""
        return self.my + 2, self.mx + 2

    @property
    def x_edge_shape(self) -> tuple[int, int]:
        return self.my, self.mx + 1

    @property
    def y_edge_shape(self) -> tuple[int, int]:
        return self.my + 1, self.mx

    @property
    def n_scalar(self) -> int:
        return (self.mx + 2) * (self.my + 2)

    @property
    def n_x_edge(self) -> int:
        return self.my * (self.mx + 1)

    @property
    def n_y_edge(self) -> int:
        return self.mx * (self.my + 1)

    @property
    def n_edge(self) -> int:
        return self.n_x_edge + self.n_y_edge

    def scalar_mesh(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Coordinates of every scalar location, each of shape ``scalar_shape``."""
        return np.meshgrid(self.x_grid.scalar_coords, self.y_grid.scalar_coords)

    def x_edge_mesh(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        return np.meshgrid(self.x_grid.edge_coords, self.y_grid.scalar_coords[1:-1])

    def y_edge_mesh(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        return np.meshgrid(self.x_grid.scalar_coords[1:-1], self.y_grid.edge_coords)

    def split_edges(
        self, v: NDArray[np.float64]
    ) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Split an edge vector into its two blocks, reshaped to 2D arrays."""
        v = np.asarray(v)
        if v.shape != (self.n_edge,):
            raise GridError(f"edge vector must have length {self.n_edge}")
        vx = v[: self.n_x_edge].reshape(self.x_edge_shape)
        vy = v[self.n_x_edge :].reshape(self.y_edge_shape)
        return vx, vy
