"""Measurements on 1D field data: wavelength, envelope, attenuation."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

MU0 = 4e-7 * np.pi


def zero_crossings(field: ArrayLike, lo: int, hi: int) -> NDArray[np.float64]:
    """Linearly interpolated sign changes of ``field[lo:hi]`` (in index units)."""
    s = np.asarray(field, dtype=float)[lo:hi]
    idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
    return lo + idx + s[idx] / (s[idx] - s[idx + 1])


def wavelength_cells(field: ArrayLike, lo: int, hi: int) -> float:
    """Twice the mean zero-crossing spacing; needs at least two crossings."""
    zc = zero_crossings(field, lo, hi)
    if zc.size < 2:
        raise ValueError(f"fewer than two zero crossings in [{lo}, {hi})")
    return 2.0 * float(np.mean(np.diff(zc)))


def envelope(history: ArrayLike) -> NDArray[np.float64]:
    """Pointwise peak ``|E|`` over a stack of snapshots (time along axis 0)."""
    return np.max(np.abs(np.asarray(history, dtype=float)), axis=0)


def attenuation_fit(env: ArrayLike, lo: int, hi: int, dz: float) -> float:
    """Attenuation constant (Np per length unit) from a log-linear fit of ``env[lo:hi]``."""
    d = np.arange(lo, hi)
    slope = np.polyfit(d, np.log(np.asarray(env, dtype=float)[d]), 1)[0]
    return -slope / dz


def lossy_attenuation(
    freq: float, eps_r: float, sigma: float, eps0: float, mu: float = MU0
) -> float:
    """Plane-wave attenuation ``w sqrt(mu eps / 2) [sqrt(1 + (s/(w eps))^2) - 1]^(1/2)``."""
    w = 2 * np.pi * freq
    eps = eps_r * eps0
    loss = sigma / (w * eps)
    return float(w * np.sqrt(mu * eps / 2) * np.sqrt(np.sqrt(1 + loss**2) - 1))
