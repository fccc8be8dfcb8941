"""Classical 1D Yee FDTD solver in normalized Courant-0.5 form.

E lives on integer nodes ``0..N-1`` and H on the ``N-1`` half nodes between
them. The magnetic update uses the fixed factor 0.5 (the Courant number) and
the electric update uses per-node ``ca``/``cb`` loss coefficients, so in free
space ``ca = 1`` and ``cb = 0.5``.

Node indices are laid out to match the mimetic scalar locations one to one:
a mimetic grid of ``m`` cells pairs with a Yee grid of ``m + 2`` E nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

EPS0 = 8.85419e-12
C0 = 3e8
COURANT = 0.5


class OverDampedError(ValueError):
    """Loss term too large for the semi-implicit update (ca <= 0)."""


@dataclass(frozen=True)
class CflResult:
    courant: float
    stable: bool

    def __bool__(self) -> bool:
        return self.stable


def cfl_check(dt: float, dz: float, c0: float = C0) -> CflResult:
    """Courant number ``c0*dt/dz`` and whether it meets ``S_c <= 1``."""
    if dt <= 0 or dz <= 0 or c0 <= 0:
        raise ValueError("dt, dz and c0 must be positive")
    s = c0 * dt / dz
    # allow rounding noise when dt is computed as dz/c0
    return CflResult(courant=s, stable=s <= 1.0 + 1e-12)


@dataclass(frozen=True)
class YeeCoefficients:
    ca: NDArray[np.float64]
    cb: NDArray[np.float64]

    def __post_init__(self) -> None:
        if self.ca.shape != self.cb.shape:
            raise ValueError("ca and cb must have the same length")


def loss_term(eps_r, sigma, dt: float, eps0: float = EPS0):
    return np.asarray(sigma, dtype=float) * dt / (2.0 * eps0 * np.asarray(eps_r, dtype=float))


def lossy_coefficients(
    eps_r: ArrayLike, sigma: ArrayLike, dt: float, eps0: float = EPS0
) -> YeeCoefficients:
    """Semi-implicit loss coefficients at Courant 0.5.

    With ``l = sigma*dt / (2*eps0*eps_r)``: ``ca = (1 - l)/(1 + l)`` and
    ``cb = (0.5/eps_r)/(1 + l)``.
    """
    eps_r = np.atleast_1d(np.asarray(eps_r, dtype=float))
    sigma = np.atleast_1d(np.asarray(sigma, dtype=float))
    eps_r, sigma = np.broadcast_arrays(eps_r, sigma)
    if np.any(eps_r < 1):
        raise ValueError("relative permittivity must be >= 1")
    if np.any(sigma < 0):
        raise ValueError("conductivity must be non-negative")
    ell = loss_term(eps_r, sigma, dt, eps0)
    if np.any(ell >= 1):
        raise OverDampedError(
            f"loss term {float(np.max(ell)):.6g} >= 1 makes ca non-positive; "
            "reduce dt or sigma"
        )
    ca = (1.0 - ell) / (1.0 + ell)
    cb = (COURANT / eps_r) / (1.0 + ell)
    return YeeCoefficients(ca=ca.copy(), cb=cb.copy())


@dataclass
class YeeState:
    """E at ``N`` nodes (time level n), H at ``N - 1`` half nodes (n + 1/2)."""

    ex: NDArray[np.float64]
    hy: NDArray[np.float64]
    n: int = 0

    def __post_init__(self) -> None:
        self.ex = np.asarray(self.ex, dtype=float)
        self.hy = np.asarray(self.hy, dtype=float)
        if self.hy.shape != (self.ex.shape[0] - 1,):
            raise ValueError(
                f"hy must have {self.ex.shape[0] - 1} values, got {self.hy.shape}"
            )

    @classmethod
    def zeros(cls, nodes: int) -> YeeState:
        return cls(np.zeros(nodes), np.zeros(nodes - 1))

    def copy(self) -> YeeState:
        return YeeState(self.ex.copy(), self.hy.copy(), self.n)


def yee_step(
    state: YeeState,
    coeffs: YeeCoefficients,
    source: tuple[int, float] | None = None,
    abc: bool = False,
) -> YeeState:
    """Advance one leapfrog step and return the new state.

    Order: E update on interior nodes, additive source, optional
    delayed-copy boundary overwrite, then H update. The end nodes are never
    touched by the E update; with ``abc=True`` they receive the neighbouring
    interior values saved before the update.
    """
    ex, hy = state.ex.copy(), state.hy.copy()
    if coeffs.ca.shape != ex.shape:
        raise ValueError("coefficient length does not match the E grid")
    left, right = ex[1], ex[-2]
    ex[1:-1] = coeffs.ca[1:-1] * ex[1:-1] + coeffs.cb[1:-1] * (hy[:-1] - hy[1:])
    if source is not None:
        idx, value = source
        ex[idx] += value
    if abc:
        ex[0], ex[-1] = left, right
    hy += COURANT * (ex[:-1] - ex[1:])
    return YeeState(ex, hy, state.n + 1)
