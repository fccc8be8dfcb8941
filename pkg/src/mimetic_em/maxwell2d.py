"""Mimetic 2D TMz solver with a polynomially graded UPML.

Normalized units (c0 = mu0 = eps0 = 1). State is ``e`` (E_z on the scalar
layout) and ``b``, a pseudo-flux on the edge layout that is updated with the
gradient directly::

    b <- aB * (b - dt*G @ e)
    e <- aE * (e - dt*D @ b)

The x-edge block of ``b`` equals ``-B_y`` and the y-edge block equals
``+B_x``; :func:`physical_b` undoes the sign so output is labelled by the
physical components.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from numpy.typing import NDArray

from .grids import StaggeredGrid2D
from .operators import check_order, div2d, grad2d
from .sparse import SparseMatrix


class PmlConfigError(ValueError):
    """PML layer does not fit the grid or has invalid parameters."""


@dataclass(frozen=True)
class PmlSpec:
    depth: int = 30
    sigma_max: float = 100.0
    p: float = 4.0

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise PmlConfigError(f"PML depth must be >= 1, got {self.depth}")
        if not self.sigma_max > 0:
            raise PmlConfigError(f"sigma_max must be positive, got {self.sigma_max}")
        if self.p < 1:
            raise PmlConfigError(f"grading exponent must be >= 1, got {self.p}")


@dataclass(frozen=True)
class Pulse:
    x: float = 0.5
    y: float = 0.5
    width: float = 400.0


@dataclass(frozen=True)
class Scenario2D:
    mx: int = 100
    my: int = 100
    dx: float = 0.01
    dy: float = 0.01
    dt: float = 0.005
    steps: int = 140
    k: int = 2
    pulse: Pulse = field(default_factory=Pulse)
    pml: PmlSpec | None = field(default_factory=PmlSpec)
    snapshot_steps: tuple[int, ...] = (0, 70, 140)

    def __post_init__(self) -> None:
        check_order(self.k)
        StaggeredGrid2D(self.mx, self.my, self.dx, self.dy)
        if not 0 < self.dt <= 0.5 * min(self.dx, self.dy) * (1 + 1e-12):
            raise ValueError(
                f"dt={self.dt} must lie in (0, 0.5*min(dx, dy)]"
            )
        if self.steps < 0:
            raise ValueError(f"steps must be >= 0, got {self.steps}")
        if self.pml is not None and not self.pml.depth < min(self.mx, self.my) / 2:
            raise PmlConfigError(
                f"PML depth {self.pml.depth} must be below half the smaller "
                f"cell count ({min(self.mx, self.my)})"
            )

    @property
    def grid(self) -> StaggeredGrid2D:
        return StaggeredGrid2D(self.mx, self.my, self.dx, self.dy)


def build_scenario_sullivan_2d() -> Scenario2D:
    """100 x 100 unit square, centred Gaussian, 30-cell UPML."""
    return Scenario2D()


def sigma_max_estimate(p: float, eta: float, dx: float) -> float:
    """Common estimate ``0.8 (p + 1) / (eta dx)`` for the peak PML conductivity."""
    if eta <= 0 or dx <= 0:
        raise ValueError("eta and dx must be positive")
    return 0.8 * (p + 1) / (eta * dx)


def sigma_profile_1d(size: int, depth: int, sigma_max: float, p: float) -> NDArray[np.float64]:
    """Graded conductivity over ``size`` scalar locations (``size = m + 2``).

    In 1-based terms, locations ``i <= depth`` get
    ``sigma_max*((depth - i + 1)/depth)**p`` and locations
    ``i >= size + 1 - depth`` get ``sigma_max*((i - (size - depth))/depth)**p``.
    """
    if depth < 1:
        raise PmlConfigError("PML depth must be >= 1")
    if 2 * depth > size:
        raise PmlConfigError(
            f"left and right PML regions overlap: depth {depth}, size {size}"
        )
    i = np.arange(1, size + 1, dtype=float)
    sigma = np.zeros(size)
    left = i <= depth
    right = i >= size + 1 - depth
    sigma[left] = sigma_max * ((depth - i[left] + 1) / depth) ** p
    sigma[right] = sigma_max * ((i[right] - (size - depth)) / depth) ** p
    return sigma


def _profiles(s: Scenario2D) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    if s.pml is None:
        return np.zeros(s.mx + 2), np.zeros(s.my + 2)
    sx = sigma_profile_1d(s.mx + 2, s.pml.depth, s.pml.sigma_max, s.pml.p)
    sy = sigma_profile_1d(s.my + 2, s.pml.depth, s.pml.sigma_max, s.pml.p)
    return sx, sy


def damping_vectors(s: Scenario2D) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Multiplicative damping ``exp(-sigma*dt)`` on the scalar and edge layouts.

    Scalar conductivity is the separable sum ``sx[i] + sy[j]``. Edge values
    sample the scalar profiles at the first ``m + 1`` scalar indices along the
    edge direction and at the interior indices across it.
    """
    sx, sy = _profiles(s)
    sig_e = sy[:, None] + sx[None, :]
    sig_bx_edges = sy[1 : s.my + 1, None] + sx[None, : s.mx + 1]
    sig_by_edges = sy[: s.my + 1, None] + sx[None, 1 : s.mx + 1]
    a_e = np.exp(-sig_e.ravel() * s.dt)
    a_b = np.exp(-np.concatenate([sig_bx_edges.ravel(), sig_by_edges.ravel()]) * s.dt)
    grid = s.grid
    if a_e.shape != (grid.n_scalar,) or a_b.shape != (grid.n_edge,):
        raise PmlConfigError("damping vectors do not match the operator layout")
    return a_e, a_b


def initial_pulse(grid: StaggeredGrid2D, pulse: Pulse = Pulse()) -> NDArray[np.float64]:
    """Gaussian ``exp(-w((x-x0)^2 + (y-y0)^2))`` at every scalar location."""
    X, Y = grid.scalar_mesh()
    return np.exp(-pulse.width * ((X - pulse.x) ** 2 + (Y - pulse.y) ** 2)).ravel()


def physical_b(
    b: NDArray[np.float64], grid: StaggeredGrid2D
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Return ``(B_x, B_y)`` as 2D arrays from the pseudo-flux vector.

    ``B_x`` lives on the y-edge block, shape ``(my + 1, mx)``; ``B_y`` on the
    x-edge block, shape ``(my, mx + 1)``.
    """
    bxe, bye = grid.split_edges(b)
    return bye.copy(), -bxe


@dataclass
class MimeticState2D:
    e: NDArray[np.float64]
    b: NDArray[np.float64]
    n: int = 0

    def energy(self) -> float:
        return float(self.e @ self.e + self.b @ self.b)


@dataclass
class Snapshot2D:
    step: int
    e: NDArray[np.float64]
    b: NDArray[np.float64]


@dataclass
class Run2DResult:
    scenario: Scenario2D
    snapshots: list[Snapshot2D]
    final: MimeticState2D
    energy: list[float]
    max_abs_e: list[float]

    def snapshot(self, step: int) -> Snapshot2D:
        for s in self.snapshots:
            if s.step == step:
                return s
        raise KeyError(step)


def build_operators(s: Scenario2D) -> tuple[SparseMatrix, SparseMatrix]:
    """Time-step-scaled ``(dt*grad2d, dt*div2d)``."""
    G = grad2d(s.k, s.mx, s.dx, s.my, s.dy).scale(s.dt)
    D = div2d(s.k, s.mx, s.dx, s.my, s.dy).scale(s.dt)
    return G, D


def run_2d(
    s: Scenario2D,
    e0: NDArray[np.float64] | None = None,
    damping: tuple[NDArray[np.float64], NDArray[np.float64]] | None = None,
) -> Run2DResult:
    """Run the UPML leapfrog; ``e0`` and ``damping`` override the defaults.

    ``energy[n]`` and ``max_abs_e[n]`` record ``|e|^2 + |b|^2`` and
    ``max|e|`` after step ``n`` (index 0 is the initial state after the
    half-step B initialization).
    """
    grid = s.grid
    G, D = build_operators(s)
    a_e, a_b = damping_vectors(s) if damping is None else damping
    e = initial_pulse(grid, s.pulse) if e0 is None else np.array(e0, dtype=float)
    b = np.zeros(grid.n_edge)
    b = a_b * (b - 0.5 * G.matvec(e))

    wanted = set(s.snapshot_steps)
    snaps: list[Snapshot2D] = []
    energy = [float(e @ e + b @ b)]
    peak = [float(np.max(np.abs(e)))]
    if 0 in wanted:
        snaps.append(Snapshot2D(0, e.copy(), b.copy()))
    for n in range(1, s.steps + 1):
        b = a_b * (b - G.matvec(e))
        e = a_e * (e - D.matvec(b))
        energy.append(float(e @ e + b @ b))
        peak.append(float(np.max(np.abs(e))))
        if n in wanted:
            snaps.append(Snapshot2D(n, e.copy(), b.copy()))
    return Run2DResult(s, snaps, MimeticState2D(e, b, s.steps), energy, peak)


def enlarged_oracle_scenario(s: Scenario2D, margin: int = 100) -> Scenario2D:
    """Same physics on a domain padded by ``margin`` cells per side.

    The pulse is shifted so it sits on the same physical cells; scalar index
    ``(i, j)`` of ``s`` maps to ``(i + margin, j + margin)`` of the result.
    """
    return replace(
        s,
        mx=s.mx + 2 * margin,
        my=s.my + 2 * margin,
        pulse=replace(s.pulse, x=s.pulse.x + margin * s.dx, y=s.pulse.y + margin * s.dy),
    )


def interior_slice(s: Scenario2D) -> tuple[slice, slice]:
    """Scalar-layout ``(rows, cols)`` slice of the region outside the PML."""
    d = 0 if s.pml is None else s.pml.depth
    return slice(d + 1, s.my + 1 - d), slice(d + 1, s.mx + 1 - d)


@dataclass
class PmlOracleResult:
    max_abs_diff: float
    default: Run2DResult
    oracle: Run2DResult


def pml_oracle_comparison(s: Scenario2D | None = None, margin: int = 100) -> PmlOracleResult:
    """Compare the final field against an enlarged domain that the wave never leaves."""
    s = build_scenario_sullivan_2d() if s is None else s
    big = enlarged_oracle_scenario(s, margin)
    run_small = run_2d(s)
    run_big = run_2d(big)
    rows, cols = interior_slice(s)
    e_small = run_small.final.e.reshape(s.grid.scalar_shape)[rows, cols]
    e_big = run_big.final.e.reshape(big.grid.scalar_shape)
    e_big = e_big[rows.start + margin : rows.stop + margin, cols.start + margin : cols.stop + margin]
    return PmlOracleResult(float(np.max(np.abs(e_small - e_big))), run_small, run_big)
