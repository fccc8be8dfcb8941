"""Mimetic 1D Maxwell solver: sinusoidal source into a lossy dielectric slab.

Fields are ``ex`` at the ``m + 2`` scalar locations and ``hy`` at the
``m + 1`` edges. Operators are built with unit spacing; the Courant factor
0.5 and the material data enter through the ``ca``/``cb`` coefficients, so
one step is::

    ex <- ca * ex - cb * (D @ hy)
    ex[source] += amplitude * sin(2 pi f dt n)
    ex[0], ex[-1] <- ex[1], ex[-2]   (values saved before the update)
    hy <- hy - 0.5 * (G @ ex)

All indices are 0-based. The reference scenario's source (node 5 when
counting from one) is stored as index 4, and the slab that starts at cell
100 counting from one starts at index 99.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field, replace

import numpy as np
from numpy.typing import NDArray

from .operators import check_order, div1d, grad1d
from .sparse import SparseMatrix
from .yee import (
    C0,
    COURANT,
    EPS0,
    YeeCoefficients,
    YeeState,
    cfl_check,
    lossy_coefficients,
    yee_step,
)

DZ = 0.01  # physical cell size (m) implied by dt = 0.01 / (2 c0)


class ScenarioError(ValueError):
    """Scenario parameters violate a documented constraint."""


@dataclass(frozen=True)
class Source:
    index: int = 4
    frequency: float = 700e6
    amplitude: float = 1.0


@dataclass(frozen=True)
class Slab:
    start: int = 99
    eps_r: float = 4.0
    sigma: float = 0.04


@dataclass(frozen=True)
class Scenario1D:
    m: int = 200
    k: int = 2
    dt: float = 0.01 / (2 * 3e8)
    steps: int = 500
    source: Source = field(default_factory=Source)
    slab: Slab | None = field(default_factory=Slab)
    eps0: float = EPS0
    snapshot_every: int = 50

    def __post_init__(self) -> None:
        check_order(self.k)
        if self.m < 3:
            raise ScenarioError(f"m must be >= 3, got {self.m}")
        if not self.dt > 0:
            raise ScenarioError(f"dt must be positive, got {self.dt}")
        if self.steps < 0:
            raise ScenarioError(f"steps must be >= 0, got {self.steps}")
        if self.snapshot_every < 1:
            raise ScenarioError("snapshot_every must be >= 1")
        if not 2 <= self.source.index <= self.m - 1:
            raise ScenarioError(
                f"source index {self.source.index} must lie in [2, {self.m - 1}]"
            )
        if self.slab is not None:
            if not 1 < self.slab.start < self.m + 1:
                raise ScenarioError(
                    f"slab start {self.slab.start} must lie in (1, {self.m + 1})"
                )

    @property
    def courant(self) -> float:
        return cfl_check(self.dt, DZ, C0).courant

    def free_space(self) -> Scenario1D:
        return replace(self, slab=None)


def build_scenario_sullivan_1d() -> Scenario1D:
    """The 200-cell, 700 MHz lossy-slab reference scenario."""
    return Scenario1D()


def material_vectors(
    scenario: Scenario1D,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """``ca`` and ``cb`` over all ``m + 2`` scalar locations.

    Free space everywhere except from ``slab.start`` through the last
    location inclusive.
    """
    n = scenario.m + 2
    ca = np.ones(n)
    cb = np.full(n, COURANT)
    slab = scenario.slab
    if slab is not None:
        c = lossy_coefficients(slab.eps_r, slab.sigma, scenario.dt, scenario.eps0)
        ca[slab.start :] = c.ca[0]
        cb[slab.start :] = c.cb[0]
    return ca, cb


@dataclass
class MimeticState1D:
    ex: NDArray[np.float64]
    hy: NDArray[np.float64]
    n: int = 0

    @classmethod
    def zeros(cls, m: int) -> MimeticState1D:
        return cls(np.zeros(m + 2), np.zeros(m + 1))

    def copy(self) -> MimeticState1D:
        return MimeticState1D(self.ex.copy(), self.hy.copy(), self.n)


def source_value(scenario: Scenario1D, n: int) -> float:
    src = scenario.source
    return src.amplitude * np.sin(2 * np.pi * src.frequency * scenario.dt * n)


def step_1d(
    state: MimeticState1D,
    ca: NDArray[np.float64],
    cb: NDArray[np.float64],
    D: SparseMatrix,
    G: SparseMatrix,
    scenario: Scenario1D,
    n: int,
) -> MimeticState1D:
    """One leapfrog step; ``n`` is the 1-based step number fed to the source."""
    ex, hy = state.ex, state.hy
    left, right = ex[1], ex[-2]
    ex = ca * ex - cb * D.matvec(hy)
    ex[scenario.source.index] += source_value(scenario, n)
    ex[0], ex[-1] = left, right
    hy = hy - COURANT * G.matvec(ex)
    return MimeticState1D(ex, hy, state.n + 1)


@dataclass
class Snapshot1D:
    step: int
    ex: NDArray[np.float64]
    hy: NDArray[np.float64]


@dataclass
class Run1DResult:
    scenario: Scenario1D
    snapshots: list[Snapshot1D]
    final: MimeticState1D | YeeState


def snapshot_steps(steps: int, every: int) -> list[int]:
    """Step 0, every ``every`` steps, and the final step (no duplicates)."""
    return sorted(set(range(0, steps + 1, every)) | {steps})


Observer = Callable[[int, NDArray[np.float64], NDArray[np.float64]], None]


def run_1d(scenario: Scenario1D, observer: Observer | None = None) -> Run1DResult:
    """Run the mimetic solver for ``scenario.steps`` steps.

    ``observer(n, ex, hy)`` is called after every step, including step 0.
    """
    D = div1d(scenario.k, scenario.m, 1.0)
    G = grad1d(scenario.k, scenario.m, 1.0)
    ca, cb = material_vectors(scenario)
    state = MimeticState1D.zeros(scenario.m)
    wanted = set(snapshot_steps(scenario.steps, scenario.snapshot_every))
    snaps: list[Snapshot1D] = []

    def capture(s: MimeticState1D) -> None:
        if observer is not None:
            observer(s.n, s.ex, s.hy)
        if s.n in wanted:
            snaps.append(Snapshot1D(s.n, s.ex.copy(), s.hy.copy()))

    capture(state)
    for n in range(1, scenario.steps + 1):
        state = step_1d(state, ca, cb, D, G, scenario, n)
        capture(state)
    return Run1DResult(scenario, snaps, state)


def run_yee_1d(scenario: Scenario1D, observer: Observer | None = None) -> Run1DResult:
    """Same scenario on the classical Yee grid with matching node indices.

    Uses ``m + 2`` E nodes so that node ``i`` coincides with mimetic scalar
    location ``i``; source, slab and boundary copy are wired identically.
    """
    ca, cb = material_vectors(scenario)
    coeffs = YeeCoefficients(ca, cb)
    state = YeeState.zeros(scenario.m + 2)
    wanted = set(snapshot_steps(scenario.steps, scenario.snapshot_every))
    snaps: list[Snapshot1D] = []

    def capture(s: YeeState) -> None:
        if observer is not None:
            observer(s.n, s.ex, s.hy)
        if s.n in wanted:
            snaps.append(Snapshot1D(s.n, s.ex.copy(), s.hy.copy()))

    capture(state)
    for n in range(1, scenario.steps + 1):
        state = yee_step(
            state, coeffs, (scenario.source.index, source_value(scenario, n)), abc=True
        )
        capture(state)
    return Run1DResult(scenario, snaps, state)
